#!/usr/bin/env python3
"""Dump the exact diagonal-map polynomials of all built-in codes as JSON.

Writes one <name>.map.json per code into the output directory (default
./maps), using the canonical monomial ordering, and prints a short
human-readable rendering of each component.

Run as:  python3 scripts/export_symbolic_maps.py [outdir]
"""

import sys
from pathlib import Path

from concatcode import builtin_names, diagonal_map, get_code
from concatcode.cli import canonical_json


def render(monomials) -> str:
    parts = []
    for m in monomials:
        factors = [
            f"{var}^{e}" if e > 1 else var
            for var, e in zip("xyz", (m["a"], m["b"], m["c"]))
            if e > 0
        ]
        coeff = f"{m['num']}/{m['den']}" if m["den"] != 1 else str(m["num"])
        parts.append(f"({coeff})" + ("*" + "*".join(factors) if factors else ""))
    return " + ".join(parts) if parts else "0"


def main() -> None:
    outdir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("maps")
    outdir.mkdir(parents=True, exist_ok=True)
    for name in builtin_names():
        obj = diagonal_map(get_code(name)).to_json_obj()
        path = outdir / f"{name}.map.json"
        path.write_text(canonical_json(obj) + "\n")
        print(f"{name} -> {path}")
        for sigma in "XYZ":
            print(f"  {sigma}': {render(obj[sigma])}")


if __name__ == "__main__":
    main()
