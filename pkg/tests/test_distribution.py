from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from certnet.distribution import (
    Distribution,
    FuzzyWorldSet,
    equivalent,
    format_tsv,
    fuzzy_necessity_profile,
    fuzzy_possibility_profile,
    necessity,
    parse_tsv,
    possibility,
)
from certnet.errors import FileFormatError, VocabularyMismatchError
from certnet.logic import BOTTOM, TOP, And, Atom, Not, Or, World, parse_formula
from certnet.network import joint_distribution, load_network
from strategies import distributions, formulas


@pytest.fixture
def fourvar_joint(fixtures_dir):
    return joint_distribution(load_network(fixtures_dir / "fourvar.cbn"))


class TestMeasures:
    def test_uniform_possibility(self):
        d = Distribution.constant("ab")
        assert possibility(d, parse_formula("a & !b")) == 1

    def test_empty_max(self):
        assert possibility(Distribution.constant("ab"), BOTTOM) == 0

    def test_joint_possibility(self, fourvar_joint):
        assert possibility(fourvar_joint, parse_formula("a & b & c")) == F(3, 10)

    def test_necessity_of_top(self):
        assert necessity(Distribution.constant("ab", F(1, 3)), TOP) == 1

    def test_single_possible_world(self):
        d = Distribution("ab", [0, 1, 0, 0])
        assert necessity(d, parse_formula("a & !b")) == 1

    def test_joint_necessity(self, fourvar_joint):
        not_a_rows = [v for w, v in fourvar_joint.items() if not w["a"]]
        assert max(not_a_rows) == F(1, 10)
        assert necessity(fourvar_joint, Atom("a")) == 1 - max(not_a_rows) == F(9, 10)

    def test_vocabulary_mismatch(self):
        with pytest.raises(VocabularyMismatchError):
            equivalent(Distribution.constant("ab"), Distribution.constant("ac"))

    def test_lookup_by_world(self):
        d = Distribution("ab", ["0.1", "0.2", "0.3", "0.4"])
        assert d[World.from_mapping("ab", {"a": False, "b": True})] == F(3, 10)


@st.composite
def dist_and_pair(draw):
    d = draw(distributions())
    names = list(d.vocabulary)
    return d, draw(formulas(names)), draw(formulas(names))


class TestLaws:
    @given(dist_and_pair())
    def test_max_decomposition(self, dpq):
        d, p, q = dpq
        assert possibility(d, Or((p, q))) == max(possibility(d, p), possibility(d, q))

    @given(dist_and_pair())
    def test_min_decomposition(self, dpq):
        d, p, q = dpq
        assert necessity(d, And((p, q))) == min(necessity(d, p), necessity(d, q))

    @given(dist_and_pair())
    def test_duality(self, dpq):
        d, p, _ = dpq
        assert necessity(d, p) == 1 - possibility(d, Not(p))

    @given(dist_and_pair())
    def test_normalized_possibility_dominates(self, dpq):
        d, p, _ = dpq
        if d.height() == 1:
            assert possibility(d, p) >= necessity(d, p)


class TestProfiles:
    def test_crisp_reduces_to_possibility(self, fourvar_joint):
        p = parse_formula("b -> c", fourvar_joint.vocabulary)
        fs = FuzzyWorldSet.crisp(p, fourvar_joint.vocabulary)
        assert fuzzy_possibility_profile(fourvar_joint, fs)[1] == possibility(fourvar_joint, p)

    def test_constant_membership(self):
        d = Distribution("ab", ["0.1", "0.7", "0.3", "0"])
        fs = FuzzyWorldSet("ab", ["0.5"] * 4)
        assert fuzzy_possibility_profile(d, fs) == {F(1, 2): F(7, 10)}

    def test_two_worlds(self):
        d = Distribution("a", ["0.3", "0.8"])
        assert fuzzy_possibility_profile(d, FuzzyWorldSet("a", ["0.4", "0.4"])) == {F(2, 5): F(4, 5)}

    def test_necessity_crisp_reduces(self, fourvar_joint):
        p = parse_formula("a | d", fourvar_joint.vocabulary)
        fs = FuzzyWorldSet.crisp(p, fourvar_joint.vocabulary)
        assert fuzzy_necessity_profile(fourvar_joint, fs)[1] == necessity(fourvar_joint, p)

    def test_necessity_all_zero(self):
        d = Distribution.constant("ab", 0)
        fs = FuzzyWorldSet("ab", ["0.2", "1", "0.5", "0"])
        assert set(fuzzy_necessity_profile(d, fs).values()) == {1}

    def test_necessity_two_worlds(self):
        d = Distribution("a", ["0.3", "0.8"])
        fs = FuzzyWorldSet("a", ["1", "0.6"])
        assert fuzzy_necessity_profile(d, fs) == {F(0): F(7, 10), F(2, 5): F(1, 5)}

    @given(distributions(max_vars=3), st.data())
    def test_crisp_profiles_match_measures(self, d, data):
        p = data.draw(formulas(list(d.vocabulary)))
        fs = FuzzyWorldSet.crisp(p, d.vocabulary)
        prof = fuzzy_possibility_profile(d, fs)
        if 1 in prof:
            assert prof[1] == possibility(d, p)
        nprof = fuzzy_necessity_profile(d, fs)
        if 1 in nprof:
            assert nprof[1] == necessity(d, p)

    def test_profile_vocabulary_mismatch(self):
        with pytest.raises(VocabularyMismatchError):
            fuzzy_possibility_profile(Distribution.constant("ab"), FuzzyWorldSet("ac", [0] * 4))


class TestEquivalence:
    def test_self(self, fourvar_joint):
        assert equivalent(fourvar_joint, fourvar_joint)

    def test_one_thousandth(self, fourvar_joint):
        values = list(fourvar_joint.values)
        values[5] += F(1, 1000)
        assert not equivalent(fourvar_joint, Distribution(fourvar_joint.vocabulary, values))


class TestTsv:
    def test_header_and_rows(self, fourvar_joint):
        text = format_tsv(fourvar_joint)
        lines = text.splitlines()
        assert lines[0] == "a\tb\tc\td\tdegree"
        assert lines[1] == "a\tb\tc\td\t0.2"
        assert lines[-1] == "!a\t!b\t!c\t!d\t0"
        assert len(lines) == 17

    @given(distributions())
    def test_round_trip(self, d):
        assert parse_tsv(format_tsv(d)) == d

    def test_bad_cell(self):
        with pytest.raises(FileFormatError):
            parse_tsv("a\tdegree\nx\t0.5\n!a\t1\n")

    def test_missing_row(self):
        with pytest.raises(FileFormatError):
            parse_tsv("a\tdegree\na\t0.5\n")
