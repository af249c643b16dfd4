"""Exact polynomial coding maps and the full Stokes-space map.

Hand-derived expectations: for the three-qubit bit-flip code the recovery
operators {I, X1, X2, X3} all commute with logical X = XXX, and the
correlation sums against logical Z = ZZZ give (-2, 2, 2, 2) over the
group {III, ZZI, IZZ, ZIZ}; reading off the letter counts of the
products yields

    X component: x^3
    Y component: (3 x^2 y - y^3) / 2
    Z component: (3 z - z^3) / 2

The five-qubit and Shor expectations below were cross-checked by the
dense simulator (see test_oracle) and by an independent convolution of
the inner cube for the Shor Z component.
"""

from fractions import Fraction

import numpy as np
import pytest

from concatcode import (
    CConstants,
    DiagonalChannel,
    StokesChannel,
    apply_diagonal,
    builtin_names,
    c_constants,
    depolarizing,
    diagonal_map,
    general_map,
    general_map_exact,
    get_code,
    is_valid_channel,
    random_cptp,
    random_pauli_channel,
)

F = Fraction


def monomials(code_name: str, sigma: str):
    poly = diagonal_map(get_code(code_name))
    return [(m.a, m.b, m.c, m.coeff) for m in poly.components[sigma]]


def test_bitflip3_polynomials_match_hand_derivation():
    assert monomials("bitflip3", "X") == [(3, 0, 0, F(1))]
    assert monomials("bitflip3", "Y") == [(0, 3, 0, F(-1, 2)), (2, 1, 0, F(3, 2))]
    assert monomials("bitflip3", "Z") == [(0, 0, 1, F(3, 2)), (0, 0, 3, F(-1, 2))]


FIVE_QUBIT_X = [
    (1, 0, 2, F(5, 4)),
    (1, 2, 0, F(5, 4)),
    (1, 2, 2, F(-5, 4)),
    (5, 0, 0, F(-1, 4)),
]


def test_five_qubit_x_component_exact():
    assert monomials("five-qubit", "X") == FIVE_QUBIT_X


def test_five_qubit_cyclic_structure():
    # Y component is the X component under x->y->z->x, Z under the square.
    y_expected = sorted((c, a, b, coeff) for a, b, c, coeff in FIVE_QUBIT_X)
    z_expected = sorted((b, c, a, coeff) for a, b, c, coeff in FIVE_QUBIT_X)
    assert monomials("five-qubit", "Y") == y_expected
    assert monomials("five-qubit", "Z") == z_expected


def _cube(coeffs: list[Fraction]) -> list[Fraction]:
    def conv(u, v):
        out = [F(0)] * (len(u) + len(v) - 1)
        for i, a in enumerate(u):
            for j, b in enumerate(v):
                out[i + j] += a * b
        return out

    return conv(coeffs, conv(coeffs, coeffs))


def test_shor_z_component_is_cubed_inner_map():
    inner = [F(0), F(3, 2), F(0), F(-1, 2)]  # (3z - z^3) / 2
    cubed = _cube(inner)
    expected = [(0, 0, d, c) for d, c in enumerate(cubed) if c != 0]
    assert monomials("shor", "Z") == expected


def test_shor_x_component_univariate():
    assert all(b == 0 and c == 0 for _, b, c, _ in monomials("shor", "X"))
    poly = diagonal_map(get_code("shor"))
    assert poly.evaluate("X", F(1), F(0), F(0)) == 1


def test_identity_is_fixed_point_exactly():
    for name in builtin_names():
        poly = diagonal_map(get_code(name))
        for sigma in "XYZ":
            assert poly.evaluate(sigma, F(1), F(1), F(1)) == 1


def test_degree_bound():
    for name in builtin_names():
        code = get_code(name)
        poly = diagonal_map(code)
        for sigma in "XYZ":
            assert all(m.a + m.b + m.c <= code.n for m in poly.components[sigma])


def test_depolarizing_line_five_qubit():
    poly = diagonal_map(get_code("five-qubit"))
    line = poly.depolarizing_line("X")
    assert line == (F(0), F(0), F(0), F(5, 2), F(0), F(-3, 2))


def test_apply_diagonal_examples():
    poly3 = diagonal_map(get_code("bitflip3"))
    out = apply_diagonal(poly3, DiagonalChannel(1.0, 1.0, 0.9))
    assert out.z == pytest.approx(0.9855, abs=1e-15)
    poly5 = diagonal_map(get_code("five-qubit"))
    x = 0.93
    out5 = apply_diagonal(poly5, DiagonalChannel(x, x, x))
    assert out5.x == pytest.approx(2.5 * x**3 - 1.5 * x**5, abs=1e-14)
    for name in builtin_names():
        poly = diagonal_map(get_code(name))
        assert apply_diagonal(poly, DiagonalChannel.identity()).as_tuple() == (1, 1, 1)


def test_json_export_canonical_order():
    obj = diagonal_map(get_code("five-qubit")).to_json_obj()
    assert list(obj) == ["X", "Y", "Z"]
    keys = [(m["a"], m["b"], m["c"]) for m in obj["X"]]
    assert keys == sorted(keys)
    assert obj["X"][-1] == {"a": 5, "b": 0, "c": 0, "num": -1, "den": 4}


# -- general map --------------------------------------------------------------------


def test_general_map_identity_is_identity():
    for name in builtin_names():
        out = general_map(get_code(name), StokesChannel.identity())
        np.testing.assert_allclose(out.matrix, np.eye(4), atol=1e-12)


def test_general_map_exact_diagonal_reduction():
    x, y, z = F(9, 10), F(-3, 10), F(1, 2)
    entries = [[F(0)] * 4 for _ in range(4)]
    for i, v in enumerate((F(1), x, y, z)):
        entries[i][i] = v
    for name in ("bitflip3", "five-qubit"):
        code = get_code(name)
        out = general_map_exact(code, entries)
        poly = diagonal_map(code)
        for i in range(4):
            for j in range(4):
                if i != j:
                    assert out[i][j] == 0
        assert out[0][0] == 1
        assert out[1][1] == poly.evaluate("X", x, y, z)
        assert out[2][2] == poly.evaluate("Y", x, y, z)
        assert out[3][3] == poly.evaluate("Z", x, y, z)


def test_general_map_float_matches_exact_on_nondiagonal_input():
    rng = np.random.default_rng(31)
    raw = rng.integers(-100, 101, size=(4, 4))
    entries = [[F(int(v), 100) for v in row] for row in raw]
    code = get_code("five-qubit")
    exact = general_map_exact(code, entries)
    floated = general_map(code, StokesChannel(np.array(raw, dtype=float) / 100.0))
    for i in range(4):
        for j in range(4):
            assert floated.matrix[i, j] == pytest.approx(float(exact[i][j]), abs=1e-13)


def test_general_map_matches_diagonal_polynomials_in_float():
    rng = np.random.default_rng(42)
    for name in builtin_names():
        code = get_code(name)
        poly = diagonal_map(code)
        for _ in range(5):
            t = random_pauli_channel(rng)
            out = general_map(code, t.to_stokes())
            off = out.matrix - np.diag(np.diag(out.matrix))
            assert np.max(np.abs(off)) <= 1e-12
            expected = apply_diagonal(poly, t)
            np.testing.assert_allclose(
                np.diag(out.matrix), [1.0, *expected.as_tuple()], atol=1e-12
            )


def test_general_map_trace_preservation():
    rng = np.random.default_rng(1)
    for name in builtin_names():
        code = get_code(name)
        out = general_map(code, random_cptp(rng))
        np.testing.assert_allclose(out.matrix[0], [1, 0, 0, 0], atol=1e-12)


def test_general_map_preserves_cptp():
    rng = np.random.default_rng(2)
    for name in builtin_names():
        code = get_code(name)
        for _ in range(5):
            out = general_map(code, random_cptp(rng))
            assert is_valid_channel(out, tol=1e-10)


@pytest.mark.parametrize("name", ["five-qubit", "steane"])
def test_off_diagonal_suppression_around_diagonal_channels(name):
    code = get_code(name)
    d, w = code.distance_and_w()
    c_n = float(c_constants(code).c_n)
    rng = np.random.default_rng(7)
    for eps in (0.3, 0.1, 0.03):
        for _ in range(3):
            diag = random_pauli_channel(rng)
            noise = rng.uniform(-1.0, 1.0, size=(4, 4))
            np.fill_diagonal(noise, 0.0)
            disturbed = StokesChannel(diag.to_stokes().matrix + eps * noise)
            gap = general_map(code, disturbed).matrix - general_map(
                code, diag.to_stokes()
            ).matrix
            off = gap - np.diag(np.diag(gap))
            assert np.max(np.abs(off)) <= c_n * eps**d + 1e-12
            assert np.max(np.abs(np.diag(gap))) <= c_n * eps**w + 1e-12


def test_off_diagonal_output_bounded_for_cptp_inputs():
    # on a physical input the output off-diagonals are governed by the
    # largest off-diagonal input entry raised to the code distance
    code = get_code("five-qubit")
    d, _ = code.distance_and_w()
    c_n = float(c_constants(code).c_n)
    rng = np.random.default_rng(12)
    for _ in range(10):
        t = random_cptp(rng)
        eps = float(np.max(np.abs(t.matrix - np.diag(np.diag(t.matrix)))))
        out = general_map(code, t).matrix
        off = out - np.diag(np.diag(out))
        assert np.max(np.abs(off)) <= c_n * eps**d + 1e-12


def test_five_qubit_monotone_against_matched_depolarizing():
    # inside (sqrt(2/3), 1]^3 the depolarizing channel with the same worst
    # entry is a componentwise lower bound, and nothing exceeds 1
    code = get_code("five-qubit")
    poly = diagonal_map(code)
    rng = np.random.default_rng(3)
    lo = np.sqrt(2.0 / 3.0)
    for _ in range(200):
        x, y, z = lo + (1.0 - lo) * rng.uniform(size=3)
        out = apply_diagonal(poly, DiagonalChannel(x, y, z))
        matched = apply_diagonal(poly, DiagonalChannel(*([min(x, y, z)] * 3)))
        for got, ref in zip(out.as_tuple(), matched.as_tuple()):
            assert ref - 1e-12 <= got <= 1.0 + 1e-12


# -- constants ----------------------------------------------------------------------


def test_c_n_values_and_bounds():
    expected = {"bitflip3": 64 // 8, "five-qubit": 64, "shor": 4096, "steane": 400}
    for name in builtin_names():
        code = get_code(name)
        constants = c_constants(code)
        assert constants.c_n == expected[name]
        assert (1 << code.m) <= constants.c_n <= (1 << (2 * code.m))


def test_c_m_grid_five_qubit():
    constants = c_constants(get_code("five-qubit"), seed=0)
    # the axis directions alone force 2.5 - o(1); the supremum over all
    # deficit directions is 7.5, attained in the fully depolarizing corner
    assert 2.49 <= constants.c_m <= 7.5
    assert constants.bounds_guaranteed
    again = c_constants(get_code("five-qubit"), seed=0)
    assert again.c_m == constants.c_m


def test_c_m_flags_weak_codes():
    constants = c_constants(get_code("bitflip3"))
    assert isinstance(constants, CConstants)
    assert not constants.bounds_guaranteed
