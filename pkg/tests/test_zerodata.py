import gzip

import numpy as np
import pytest

from zerodetect.errors import CoverageError, ZeroFileError
from zerodetect.lfunc import ZETA, find_zero_ordinates
from zerodetect.zerodata import (ZeroList, format_zeros, load_zeros, merge, mirror_for_shift, save_zeros,
                                 validate_counts)


def test_load_two_lines(tmp_path):
    p = tmp_path / "z.txt"
    p.write_text("14.134725141\n21.022039639\n")
    Z = load_zeros(p, "zeta")
    assert len(Z) == 2 and Z.t_max == 21.022039639


def test_empty_file(tmp_path):
    p = tmp_path / "z.txt"
    p.write_text("# nothing here\n")
    Z = load_zeros(p)
    assert len(Z) == 0 and Z.t_max == 0


def test_full_table(zeta_zeros):
    assert len(zeta_zeros) == 100000
    assert abs(zeta_zeros.t_max - 74920.8) < 0.1
    assert validate_counts(zeta_zeros).passed


def test_parse_error_line_number(tmp_path):
    p = tmp_path / "z.txt"
    p.write_text("# c\n14.13\nabc\n")
    with pytest.raises(ZeroFileError) as e:
        load_zeros(p)
    assert e.value.details["line"] == 3


def test_descending_lines_listed(tmp_path):
    p = tmp_path / "z.txt"
    p.write_text("14.1\n25.0\n21.0\n30.0\n")
    with pytest.raises(ZeroFileError) as e:
        load_zeros(p)
    assert e.value.details["lines"] == [3]


def test_multiplicity_kept(tmp_path):
    p = tmp_path / "z.txt"
    p.write_text("5.0\n5.0\n7.0\n")
    Z = load_zeros(p, "L/5.2")
    assert list(Z.ordinates) == [5.0, 5.0, 7.0]


def test_round_trip(tmp_path, zeta_zeros):
    small = ZeroList("zeta", zeta_zeros.ordinates[:500], float(zeta_zeros.ordinates[499]), "x")
    a = tmp_path / "a.txt"
    b = tmp_path / "b.txt"
    save_zeros(small, a)
    Z1 = load_zeros(a)
    save_zeros(Z1, b)
    assert np.array_equal(Z1.ordinates, small.ordinates)
    body = lambda text: [ln for ln in text.splitlines() if not ln.startswith("#")]
    assert body(a.read_text()) == body(b.read_text())
    assert body(format_zeros(load_zeros(b))) == body(b.read_text())


def test_gzip(tmp_path):
    p = tmp_path / "z.txt.gz"
    with gzip.open(p, "wt") as fh:
        fh.write("14.134725141\n")
    assert len(load_zeros(p)) == 1


def test_validate_small_and_truncated(zeta_zeros):
    three = ZeroList("zeta", zeta_zeros.ordinates[:3], 30.0, "x")
    assert validate_counts(three).passed
    assert validate_counts(ZeroList("zeta", [], 0.0, "x")).passed
    first = zeta_zeros.ordinates[:1000]
    missing = ZeroList("zeta", np.delete(first, 500), float(first[-1]), "x")
    r = validate_counts(missing)
    assert not r.passed
    lo, hi = r.failing_windows[0]
    assert lo >= first[499] - 1e-9 or hi >= first[500]


def test_mirror(zeta_zeros):
    Z = ZeroList("zeta", zeta_zeros.ordinates[:10], 50.0, "x")
    assert mirror_for_shift(Z, 5.0) is Z
    M = mirror_for_shift(Z, -20.0)
    assert np.any(np.abs(M.ordinates + 14.134725141734694) < 1e-8)
    assert M.t_min == -50.0
    L = ZeroList("L/5.1", [4.1], 10.0, "x")
    with pytest.raises(CoverageError):
        mirror_for_shift(L, -20.0)


def test_merge_consistent(zeta_zeros):
    comp = find_zero_ordinates(ZETA, 100)
    fileZ = ZeroList("zeta", zeta_zeros.window(0, 200), 200.0, "file")
    m = merge(comp, fileZ)
    assert m.t_max == 200.0 and m.source == "merged"
    bad = ZeroList("zeta", np.delete(comp.ordinates, 3), 100.0, "x")
    with pytest.raises(ZeroFileError):
        merge(bad, fileZ)


def test_immutable(zeta_zeros):
    with pytest.raises(ValueError):
        zeta_zeros.ordinates[0] = 1.0
