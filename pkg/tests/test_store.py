import pytest

from perrin.store import CandidateShape, PppRecord, PppStore

FIRST_17_PPPS = [
    271441, 904631, 16532714, 24658561, 27422714, 27664033, 46672291,
    102690901, 130944133, 196075949, 214038533, 517697641, 545670533,
    801123451, 855073301, 903136901, 970355431,
]


class TestCandidateShape:
    def test_sorts_multipliers_descending(self):
        assert CandidateShape((1, 3), 3037).multipliers == (3, 1)
        assert CandidateShape((9, 10, 1), 1871).multipliers == (10, 9, 1)

    def test_value(self):
        assert CandidateShape((3, 1), 3037).value() == 27664033
        assert CandidateShape((1, 1), 521).value() == 271441

    def test_validation(self):
        with pytest.raises(ValueError):
            CandidateShape((3,), 11)
        with pytest.raises(ValueError):
            CandidateShape((3, 0), 11)
        with pytest.raises(ValueError):
            CandidateShape((3, 1), 10)  # even core
        with pytest.raises(ValueError):
            CandidateShape((3, 1), 1)


class TestPppRecord:
    def test_digits_autofilled(self):
        assert PppRecord(271441, "exhaustive").digits == 6

    def test_digit_mismatch_rejected(self):
        with pytest.raises(ValueError):
            PppRecord(271441, "exhaustive", digits=5)

    def test_shape_value_mismatch_rejected(self):
        with pytest.raises(ValueError):
            PppRecord(271442, "structured", CandidateShape((3, 1), 3037))

    def test_unknown_method_rejected(self):
        with pytest.raises(ValueError):
            PppRecord(271441, "guessed")

    def test_line_round_trip(self):
        rec = PppRecord(27664033, "structured", CandidateShape((3, 1), 3037), verified=True)
        line = rec.to_line()
        assert line == "27664033\tstructured\t3037\t3,1\t8\ttrue"
        assert PppRecord.from_line(line) == rec

    def test_shapeless_line(self):
        rec = PppRecord(271441, "imported")
        assert rec.to_line() == "271441\timported\t-\t-\t6\tfalse"
        assert PppRecord.from_line(rec.to_line()) == rec


class TestPppStore:
    def test_append_dedupes_and_sorts(self, tmp_path):
        st = PppStore(tmp_path / "s.tsv")
        recs = [PppRecord(904631, "exhaustive"), PppRecord(271441, "exhaustive")]
        assert st.append(recs) == 2
        assert st.append(recs) == 0
        assert [r.value for r in st.records] == [271441, 904631]

    def test_round_trip_is_byte_exact(self, tmp_path):
        path = tmp_path / "s.tsv"
        st = PppStore(path)
        st.append(
            [
                PppRecord(27664033, "structured", CandidateShape((3, 1), 3037), verified=True),
                PppRecord(271441, "exhaustive", verified=True),
                PppRecord(904631, "imported"),
            ]
        )
        original = path.read_bytes()
        reloaded = PppStore(path)
        assert reloaded.records == st.records
        reloaded.save()
        assert path.read_bytes() == original

    def test_count_below(self, tmp_path):
        st = PppStore(tmp_path / "s.tsv")
        st.append(PppRecord(v, "imported") for v in FIRST_17_PPPS)
        assert st.count_below(10**9) == 17
        assert st.count_below(10**8) == 7
        assert st.count_below(10**6) == 2

    def test_verify_all_flags_bad_entries(self, tmp_path):
        st = PppStore(tmp_path / "s.tsv")
        st.append(
            [
                PppRecord(13, "imported"),       # prime
                PppRecord(341, "imported"),      # composite but fails the test
                PppRecord(271441, "imported"),   # genuine
            ]
        )
        failures = st.verify_all()
        reasons = {rec.value: reason for rec, reason in failures}
        assert reasons == {13: "is prime", 341: "failed Perrin test"}
        flags = {r.value: r.verified for r in st.records}
        assert flags == {13: False, 341: False, 271441: True}

    def test_verify_all_idempotent(self, tmp_path):
        st = PppStore(tmp_path / "s.tsv")
        st.append([PppRecord(13, "imported"), PppRecord(271441, "imported")])
        first = st.verify_all()
        snapshot = (tmp_path / "s.tsv").read_bytes()
        second = st.verify_all()
        assert [(r.value, why) for r, why in first] == [(r.value, why) for r, why in second]
        assert (tmp_path / "s.tsv").read_bytes() == snapshot

    def test_merge_is_set_union(self, tmp_path):
        a = PppStore(tmp_path / "a.tsv")
        a.append([PppRecord(271441, "exhaustive"), PppRecord(904631, "exhaustive")])
        b = PppStore(tmp_path / "b.tsv")
        b.append([PppRecord(904631, "imported"), PppRecord(16532714, "imported")])
        assert a.merge(b) == 1
        assert [r.value for r in a.records] == [271441, 904631, 16532714]
        # the record already present keeps its original method
        assert a.records[1].method == "exhaustive"

    def test_import_plain(self, tmp_path):
        listing = tmp_path / "plain.txt"
        listing.write_text("271441\n904631\n271441\n")
        st = PppStore(tmp_path / "s.tsv")
        assert st.import_plain(listing) == 2
        assert all(r.method == "imported" for r in st.records)

    def test_stats_rows(self, tmp_path):
        st = PppStore(tmp_path / "s.tsv")
        st.append(PppRecord(v, "imported", verified=True) for v in FIRST_17_PPPS)
        rows = st.stats(8)
        assert rows[-1] == (10**8, 7, "1.21497e-06")
        assert rows[0] == (10, 0, "0")

    def test_stats_marks_unavailable_decades(self, tmp_path):
        st = PppStore(tmp_path / "s.tsv")
        rows = st.stats(15)
        assert rows[13] == (10**14, 0, "0")
        assert rows[14] == (10**15, 0, None)

    def test_stats_empty_store(self, tmp_path):
        st = PppStore(tmp_path / "s.tsv")
        assert [c for _, c, _ in st.stats(6)] == [0] * 6
