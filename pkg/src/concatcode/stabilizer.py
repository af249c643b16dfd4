"""Stabilizer code definitions, validation and derived coefficient data.

A code is given by its n-1 commuting generators (distance-one logical
qubit, k=1), the logical X and Z operators, and one recovery operator per
syndrome.  From these the module derives the stabilizer group, the signed
recovery/stabilizer correlation table (`f_matrix`), the exact rational
decoding coefficients, and the brute-forced code parameters d and w.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .pauli import PauliString, eta

SIGMAS = ("I", "X", "Y", "Z")

BRUTE_FORCE_MAX_QUBITS = 12


class InvalidCodeError(ValueError):
    """A structural code invariant is broken."""


class CapabilityError(RuntimeError):
    """The request exceeds a documented size bound of this implementation."""


class CodeSpecError(ValueError):
    """A code spec file is ill-formed; carries the offending line number."""

    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


@dataclass(frozen=True)
class ValidationReport:
    passed: bool
    violations: tuple[str, ...] = ()


@dataclass(frozen=True)
class FMatrix:
    """Signed sums f[i][sigma] = sum_j eta(R_j, S_i) * eta(R_j, logical sigma).

    Rows follow the stabilizer group order (generator subset bitmask),
    columns the letter order I, X, Y, Z.  Entries are exact integers.
    """

    values: np.ndarray

    def value(self, i: int, sigma: str) -> int:
        return int(self.values[i, SIGMAS.index(sigma)])


class StabilizerCode:
    """An [n, 1] stabilizer code with explicit recovery operators.

    Instances are immutable after construction; derived data (group,
    f-matrix, coefficients, code parameters) is computed lazily and
    cached.  Use :meth:`validate` to obtain a report instead of an
    exception for codes of unknown quality.
    """

    def __init__(
        self,
        n: int,
        generators: Sequence[PauliString],
        logical_x: PauliString,
        logical_z: PauliString,
        recovery: Sequence[PauliString],
        name: str | None = None,
    ) -> None:
        if n < 1:
            raise ValueError("n must be positive")
        for p in (*generators, logical_x, logical_z, *recovery):
            if p.n != n:
                raise ValueError(f"operator {p} does not act on {n} qubits")
        self.n = n
        self.generators = tuple(generators)
        self.logical_x = logical_x
        self.logical_z = logical_z
        self.recovery = tuple(recovery)
        self.name = name
        self._group: tuple[PauliString, ...] | None = None
        self._recovery_by_syndrome: tuple[PauliString, ...] | None = None
        self._f: FMatrix | None = None
        self._coeffs: dict[str, tuple[tuple[PauliString, int, Fraction], ...]] = {}
        self._dw: tuple[int, int] | None = None

    @property
    def m(self) -> int:
        return len(self.generators)

    def __repr__(self) -> str:
        label = self.name or f"[{self.n},1]"
        return f"StabilizerCode({label}, m={self.m})"

    # -- validation ------------------------------------------------------

    def validate(self) -> ValidationReport:
        """Check every structural invariant and report all violations found."""
        bad: list[str] = []
        if self.m != self.n - 1:
            bad.append(f"expected m = n-1 = {self.n - 1} generators, got {self.m}")
        for i, j in itertools.combinations(range(self.m), 2):
            if eta(self.generators[i], self.generators[j]) != 1:
                bad.append(f"generators {i} and {j} anticommute")
        if not bad:
            # Independent hermitian generators rule out -I as a group element:
            # no nonempty subset product can even be proportional to identity.
            seen: dict[tuple[int, int], int] = {}
            for mask, elem in enumerate(self._enumerate_unchecked()):
                key = (elem.x_mask, elem.z_mask)
                if key in seen:
                    bad.append(
                        f"dependent generators: subsets {seen[key]:#x} and {mask:#x} "
                        "give the same group element"
                    )
                    break
                seen[key] = mask
                if not elem.is_hermitian:
                    bad.append(f"group element for subset {mask:#x} is not hermitian")
                    break
        for label, op in (("logicalX", self.logical_x), ("logicalZ", self.logical_z)):
            if not op.is_hermitian:
                bad.append(f"{label} is not hermitian")
            for i, g in enumerate(self.generators):
                if eta(op, g) != 1:
                    bad.append(f"{label} anticommutes with generator {i}")
        if eta(self.logical_x, self.logical_z) != -1:
            bad.append("logicalX and logicalZ do not anticommute")
        if len(self.recovery) != 1 << self.m:
            bad.append(f"expected {1 << self.m} recovery operators, got {len(self.recovery)}")
        else:
            syndromes: dict[int, int] = {}
            for j, r in enumerate(self.recovery):
                s = self.syndrome(r)
                if s in syndromes:
                    bad.append(
                        f"recovery operators {syndromes[s]} and {j} share syndrome {s:#x}"
                    )
                else:
                    syndromes[s] = j
            missing = (1 << self.m) - len(syndromes)
            if missing and not any("share syndrome" in v for v in bad):
                bad.append(f"{missing} syndromes have no recovery operator")
        return ValidationReport(passed=not bad, violations=tuple(bad))

    # -- group and syndrome machinery -------------------------------------

    def _enumerate_unchecked(self) -> Iterable[PauliString]:
        elems: list[PauliString] = [PauliString.identity(self.n)]
        for mask in range(1, 1 << self.m):
            low = (mask & -mask).bit_length() - 1
            elems.append(self.generators[low] * elems[mask ^ (1 << low)])
        return elems

    def group(self) -> tuple[PauliString, ...]:
        """All 2^m stabilizers; index = subset bitmask over the generators.

        Elements keep their exact phases.  Products of commuting hermitian
        generators are hermitian, so phases are +1 or -1; -I itself cannot
        occur once the generators are independent.
        """
        if self._group is None:
            elems = tuple(self._enumerate_unchecked())
            seen = set()
            for e in elems:
                if not e.is_hermitian:
                    raise InvalidCodeError(f"stabilizer {e} is not hermitian")
                key = (e.x_mask, e.z_mask)
                if key in seen:
                    raise InvalidCodeError("dependent generators")
                seen.add(key)
            self._group = elems
        return self._group

    def syndrome(self, p: PauliString) -> int:
        """Bit i of the result is set iff p anticommutes with generator i."""
        s = 0
        for i, g in enumerate(self.generators):
            if eta(p, g) == -1:
                s |= 1 << i
        return s

    def syndrome_bits(self, p: PauliString) -> tuple[int, ...]:
        s = self.syndrome(p)
        return tuple((s >> i) & 1 for i in range(self.m))

    def recovery_by_syndrome(self) -> tuple[PauliString, ...]:
        """Recovery operators re-indexed by their computed syndrome."""
        if self._recovery_by_syndrome is None:
            table: list[PauliString | None] = [None] * (1 << self.m)
            for r in self.recovery:
                s = self.syndrome(r)
                if table[s] is not None:
                    raise InvalidCodeError(f"two recovery operators share syndrome {s:#x}")
                table[s] = r
            if any(r is None for r in table):
                raise InvalidCodeError("recovery operators do not cover all syndromes")
            self._recovery_by_syndrome = tuple(table)  # type: ignore[arg-type]
        return self._recovery_by_syndrome

    def logical(self, sigma: str) -> PauliString:
        """Logical counterpart of a Pauli letter; logical Y is i * X * Z."""
        if sigma == "I":
            return PauliString.identity(self.n)
        if sigma == "X":
            return self.logical_x
        if sigma == "Z":
            return self.logical_z
        if sigma == "Y":
            return (self.logical_x * self.logical_z).times_i()
        raise ValueError(f"unknown letter {sigma!r}")

    # -- coefficient data --------------------------------------------------

    def f_matrix(self) -> FMatrix:
        """Exact integer table f[i][sigma] over group index i and letter sigma."""
        if self._f is None:
            group = self.group()
            recs = self.recovery_by_syndrome()
            size = len(group)
            rec_vs_stab = np.empty((size, size), dtype=np.int64)
            for i, s in enumerate(group):
                for j, r in enumerate(recs):
                    rec_vs_stab[i, j] = eta(r, s)
            values = np.empty((size, 4), dtype=np.int64)
            for col, sigma in enumerate(SIGMAS):
                lg = self.logical(sigma)
                signs = np.array([eta(r, lg) for r in recs], dtype=np.int64)
                values[:, col] = rec_vs_stab @ signs
            values.setflags(write=False)
            self._f = FMatrix(values)
        return self._f

    def coefficient_table(self, sigma: str) -> tuple[tuple[PauliString, int, Fraction], ...]:
        """Per stabilizer i: the phase-stripped product |S_i sigma_bar|, its
        hermitian sign alpha, and the exact decoding weight beta = f * alpha / 2^m.
        """
        if sigma not in self._coeffs:
            f = self.f_matrix()
            lg = self.logical(sigma)
            size = 1 << self.m
            rows = []
            for i, s in enumerate(self.group()):
                prod = s * lg
                exponent = prod.phase_exponent
                if exponent % 2 != 0:
                    raise InvalidCodeError(f"product {prod} is not hermitian")
                alpha = 1 if exponent == 0 else -1
                beta = Fraction(int(f.values[i, SIGMAS.index(sigma)]), size) * alpha
                rows.append((prod.strip_phase(), alpha, beta))
            self._coeffs[sigma] = tuple(rows)
        return self._coeffs[sigma]

    def decoding_coefficients(self) -> dict[str, list[tuple[PauliString, Fraction]]]:
        """For each letter sigma the 2^m pairs (|S_i sigma_bar|, beta)."""
        return {
            sigma: [(p, beta) for p, _, beta in self.coefficient_table(sigma)]
            for sigma in SIGMAS
        }

    # -- code parameters ----------------------------------------------------

    def distance_and_w(self) -> tuple[int, int]:
        """Brute-force (d, w) over all 4^n phase-stripped strings.

        d is the minimum Pauli weight over strings that commute with every
        generator but are not stabilizers (mod phase); w is the minimum
        weight over non-identity stabilizers.  Bounded to n <= 12.
        """
        if self._dw is None:
            if self.n > BRUTE_FORCE_MAX_QUBITS:
                raise CapabilityError(
                    f"brute-force parameter search is limited to n <= "
                    f"{BRUTE_FORCE_MAX_QUBITS}, code has n = {self.n}"
                )
            n = self.n
            mask = (1 << n) - 1
            pop = np.array([v.bit_count() for v in range(1 << n)], dtype=np.int8)
            member = np.zeros(1 << (2 * n), dtype=bool)
            for s in self.group():
                member[s.x_mask | (s.z_mask << n)] = True
            best_d = best_w = n + 1
            chunk = 1 << 20
            for start in range(0, 1 << (2 * n), chunk):
                idx = np.arange(start, min(start + chunk, 1 << (2 * n)), dtype=np.int64)
                x = idx & mask
                z = idx >> n
                w = pop[x | z]
                commuting = np.ones(len(idx), dtype=bool)
                for g in self.generators:
                    parity = (pop[x & g.z_mask] + pop[z & g.x_mask]) & 1
                    commuting &= parity == 0
                in_group = member[idx]
                logical_like = commuting & ~in_group
                if logical_like.any():
                    best_d = min(best_d, int(w[logical_like].min()))
                nontrivial = in_group & (w > 0)
                if nontrivial.any():
                    best_w = min(best_w, int(w[nontrivial].min()))
            if best_w == n + 1:
                best_w = 0  # no non-identity stabilizers (trivial m = 0 code)
            self._dw = (best_d, best_w)
        return self._dw


def auto_recovery(generators: Sequence[PauliString], n: int | None = None) -> list[PauliString]:
    """One minimum-weight representative per syndrome, ties broken by the
    lexicographic letter order I < X < Y < Z position by position; phases +1.
    """
    gens = list(generators)
    if n is None:
        if not gens:
            raise ValueError("qubit count required when there are no generators")
        n = gens[0].n
    m = len(gens)
    target = 1 << m
    found: dict[int, PauliString] = {}

    def syndrome(p: PauliString) -> int:
        s = 0
        for i, g in enumerate(gens):
            if eta(p, g) == -1:
                s |= 1 << i
        return s

    order = {"I": 0, "X": 1, "Y": 2, "Z": 3}
    for weight in range(n + 1):
        candidates: list[tuple[tuple[int, ...], PauliString]] = []
        for positions in itertools.combinations(range(n), weight):
            for letters in itertools.product("XYZ", repeat=weight):
                word = ["I"] * n
                for q, c in zip(positions, letters):
                    word[q] = c
                p = PauliString("".join(word))
                candidates.append((tuple(order[c] for c in word), p))
        candidates.sort(key=lambda item: item[0])
        for _, p in candidates:
            s = syndrome(p)
            if s not in found:
                found[s] = p
                if len(found) == target:
                    return [found[s] for s in range(target)]
    raise InvalidCodeError("some syndromes are unreachable; generators are degenerate")


# -- code spec text format ---------------------------------------------------


def parse_code_spec(text: str, name: str | None = None) -> StabilizerCode:
    """Parse the line-oriented code spec format.

    Recognised items, one per line ('#' starts a comment):

        n <int>
        generator <pauli-string>     (m = n-1 times)
        logicalX <pauli-string>
        logicalZ <pauli-string>
        recovery <pauli-string>      (2^m times)  |  recovery auto
    """
    n: int | None = None
    gens: list[PauliString] = []
    lx: PauliString | None = None
    lz: PauliString | None = None
    recs: list[PauliString] = []
    auto = False
    last = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        last = lineno
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        key, args = parts[0], parts[1:]
        if len(args) != 1:
            raise CodeSpecError(lineno, f"expected exactly one value after {key!r}")
        value = args[0]
        try:
            if key == "n":
                n = int(value)
            elif key == "generator":
                gens.append(PauliString.parse(value))
            elif key == "logicalX":
                lx = PauliString.parse(value)
            elif key == "logicalZ":
                lz = PauliString.parse(value)
            elif key == "recovery":
                if value == "auto":
                    auto = True
                else:
                    recs.append(PauliString.parse(value))
            else:
                raise CodeSpecError(lineno, f"unknown item {key!r}")
        except CodeSpecError:
            raise
        except ValueError as exc:
            raise CodeSpecError(lineno, str(exc)) from None
    if n is None:
        raise CodeSpecError(last + 1, "missing 'n' line")
    if lx is None or lz is None:
        raise CodeSpecError(last + 1, "missing logicalX or logicalZ line")
    for p in (*gens, lx, lz, *recs):
        if p.n != n:
            raise CodeSpecError(last + 1, f"operator {p} does not act on {n} qubits")
    if auto:
        if recs:
            raise CodeSpecError(last + 1, "both explicit recovery lines and 'recovery auto'")
        recs = auto_recovery(gens, n)
    elif len(recs) != 1 << len(gens):
        raise CodeSpecError(
            last + 1,
            f"expected {1 << len(gens)} recovery lines or 'recovery auto', got {len(recs)}",
        )
    return StabilizerCode(n, gens, lx, lz, recs, name=name)


def load_code(path) -> StabilizerCode:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_code_spec(fh.read(), name=str(path))


# -- built-in codes ----------------------------------------------------------


def _bitflip3() -> StabilizerCode:
    gens = [PauliString("ZZI"), PauliString("IZZ")]
    recovery = [PauliString(s) for s in ("III", "XII", "IXI", "IIX")]
    return StabilizerCode(
        3, gens, PauliString("XXX"), PauliString("ZZZ"), recovery, name="bitflip3"
    )


def _five_qubit() -> StabilizerCode:
    gens = [PauliString(s) for s in ("XZZXI", "IXZZX", "XIXZZ", "ZXIXZ")]
    recovery = [PauliString.identity(5)]
    for letter in "XYZ":
        recovery.extend(PauliString.single(5, q, letter) for q in range(5))
    return StabilizerCode(
        5, gens, PauliString("XXXXX"), PauliString("ZZZZZ"), recovery, name="five-qubit"
    )


def _steane() -> StabilizerCode:
    gens = [
        PauliString(s)
        for s in ("IIIXXXX", "IXXIIXX", "XIXIXIX", "IIIZZZZ", "IZZIIZZ", "ZIZIZIZ")
    ]
    recovery = [PauliString.identity(7)]
    recovery.extend(PauliString.single(7, q, "X") for q in range(7))
    recovery.extend(PauliString.single(7, q, "Z") for q in range(7))
    for i in range(7):
        for j in range(7):
            prod = PauliString.single(7, i, "X") * PauliString.single(7, j, "Z")
            recovery.append(prod.strip_phase())
    return StabilizerCode(
        7, gens, PauliString("XXXXXXX"), PauliString("ZZZZZZZ"), recovery, name="steane"
    )


def _shor() -> StabilizerCode:
    gens = [
        PauliString(s)
        for s in (
            "ZZIIIIIII",
            "IZZIIIIII",
            "IIIZZIIII",
            "IIIIZZIII",
            "IIIIIIZZI",
            "IIIIIIIZZ",
            "XXXXXXIII",
            "IIIXXXXXX",
        )
    ]
    ident = PauliString.identity(9)
    x_blocks = [
        [ident] + [PauliString.single(9, q, "X") for q in block]
        for block in ((0, 1, 2), (3, 4, 5), (6, 7, 8))
    ]
    z_triples = [ident]
    for block in ((0, 1, 2), (3, 4, 5), (6, 7, 8)):
        t = ident
        for q in block:
            t = t * PauliString.single(9, q, "Z")
        z_triples.append(t)
    recovery = [
        (a * b * c * d).strip_phase()
        for a in x_blocks[0]
        for b in x_blocks[1]
        for c in x_blocks[2]
        for d in z_triples
    ]
    return StabilizerCode(
        9, gens, PauliString("X" * 9), PauliString("Z" * 9), recovery, name="shor"
    )


_REGISTRY = {
    "bitflip3": _bitflip3,
    "five-qubit": _five_qubit,
    "shor": _shor,
    "steane": _steane,
}


def builtin_names() -> tuple[str, ...]:
    return tuple(_REGISTRY)


@lru_cache(maxsize=None)
def get_code(name: str) -> StabilizerCode:
    """Return the shared instance of a built-in code."""
    try:
        return _REGISTRY[name]()
    except KeyError:
        raise KeyError(
            f"unknown code {name!r}; built-ins are {', '.join(_REGISTRY)}"
        ) from None
