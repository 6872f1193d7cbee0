"""Unit tests for src.core.grid.channels."""

import pytest

from src.core.grid import (
    DEFAULT_GRID,
    ChannelRangeError,
    ConjugatePair,
    DegenerateChannelError,
    GridConfig,
    ItuChannel,
    LogicalChannel,
    conjugate,
    conjugate_pairs,
    is_split,
    itu_frequency,
    itu_to_lc,
    lc_frequency,
    lc_to_itu,
    parse_lc,
)


class TestItuToLc:
    """Tests for ITU to logical channel mapping."""

    @pytest.mark.parametrize("itu,lc", [(19, -15), (34, 0), (49, 15), (40, 6), (29, -5)])
    def test_known_channels(self, itu, lc):
        assert itu_to_lc(ItuChannel(itu)) == LogicalChannel(lc)

    def test_accepts_plain_int(self):
        assert itu_to_lc(28).lc == -6

    @pytest.mark.parametrize("itu", [18, 50, 0])
    def test_out_of_grid(self, itu):
        with pytest.raises(ChannelRangeError):
            itu_to_lc(itu)

    def test_round_trip_on_whole_grid(self):
        """itu_to_lc and lc_to_itu invert each other on 19..49."""
        for index in range(19, 50):
            assert lc_to_itu(itu_to_lc(index)) == ItuChannel(index)

    def test_lc_to_itu_out_of_grid(self):
        with pytest.raises(ChannelRangeError):
            lc_to_itu(16)


class TestFrequencies:
    """Tests for channel frequencies."""

    def test_itu_frequency(self):
        assert itu_frequency(34) == pytest.approx(193.4, abs=1e-12)
        assert ItuChannel(19).frequency_thz == pytest.approx(191.9, abs=1e-12)

    @pytest.mark.parametrize("lc,thz", [(0, 193.4), (15, 194.9), (-15, 191.9)])
    def test_lc_frequency(self, lc, thz):
        assert lc_frequency(lc) == pytest.approx(thz, abs=1e-9)

    def test_lc_frequency_out_of_range(self):
        with pytest.raises(ChannelRangeError):
            lc_frequency(-16)


class TestConjugate:
    """Tests for conjugate pairing."""

    @pytest.mark.parametrize("lc,partner", [(6, -6), (-15, 15), (1, -1)])
    def test_partner(self, lc, partner):
        assert conjugate(lc) == LogicalChannel(partner)

    def test_center_has_no_partner(self):
        with pytest.raises(DegenerateChannelError):
            conjugate(0)

    def test_involution(self):
        for lc in range(-15, 16):
            if lc:
                assert conjugate(conjugate(lc)) == LogicalChannel(lc)

    def test_degenerate_error_is_value_error(self):
        """Callers may catch the builtin."""
        with pytest.raises(ValueError):
            conjugate(LogicalChannel(0))


class TestIsSplit:
    """Tests for the splitter rule."""

    @pytest.mark.parametrize("lc,expected", [(6, True), (-5, False), (15, True), (-6, True), (1, False)])
    def test_examples(self, lc, expected):
        assert is_split(lc) is expected

    def test_symmetric(self):
        for lc in range(1, 16):
            assert is_split(lc) == is_split(-lc)

    def test_ten_of_fifteen_pairs_split(self):
        pairs = conjugate_pairs()
        assert len(pairs) == 15
        assert sum(p.is_split() for p in pairs) == 10

    def test_custom_threshold(self):
        grid = GridConfig(split_threshold=10)
        assert not is_split(9, grid)
        assert is_split(-10, grid)


class TestConjugatePairs:
    """Tests for available pair enumeration."""

    def test_exclusion_drops_whole_pair(self):
        pairs = conjugate_pairs(excluded=[3])
        assert ConjugatePair(3) not in pairs
        assert len(pairs) == 14

    def test_only(self):
        assert conjugate_pairs(only=[2, 7], excluded=[-7]) == [ConjugatePair(2)]

    def test_empty_only(self):
        assert conjugate_pairs(only=[]) == []

    def test_only_off_grid(self):
        with pytest.raises(ChannelRangeError):
            conjugate_pairs(only=[16])

    def test_pair_members(self):
        pair = ConjugatePair(7)
        assert pair.plus == LogicalChannel(7)
        assert pair.minus == LogicalChannel(-7)
        assert str(pair) == "±7"

    def test_pair_index_positive(self):
        with pytest.raises(ValueError):
            ConjugatePair(0)


class TestParseLc:
    """Tests for logical channel labels."""

    @pytest.mark.parametrize("label,lc", [("+7", 7), ("-7", -7), ("7", 7), ("LC-3", -3), (" lc 12 ", 12)])
    def test_labels(self, label, lc):
        assert parse_lc(label).lc == lc

    def test_str_round_trip(self):
        for lc in (-15, -1, 0, 1, 15):
            assert parse_lc(str(LogicalChannel(lc))).lc == lc

    @pytest.mark.parametrize("label", ["", "x7", "+-7", "7.5"])
    def test_garbage(self, label):
        with pytest.raises(ValueError):
            parse_lc(label)

    def test_off_grid(self):
        with pytest.raises(ChannelRangeError):
            parse_lc("+20")


class TestGridConfig:
    """Tests for GridConfig validation."""

    def test_defaults(self):
        assert DEFAULT_GRID.half_width == 15
        assert DEFAULT_GRID.center_frequency_thz == pytest.approx(193.4)

    def test_asymmetric_grid_rejected(self):
        with pytest.raises(ValueError, match="symmetric"):
            GridConfig(first_itu=20, last_itu=49, center_itu=34)

    def test_center_outside_rejected(self):
        with pytest.raises(ValueError):
            GridConfig(first_itu=19, last_itu=49, center_itu=49)

    def test_wider_grid(self):
        grid = GridConfig(first_itu=14, last_itu=54, center_itu=34)
        assert grid.half_width == 20
        assert itu_to_lc(14, grid).lc == -20
