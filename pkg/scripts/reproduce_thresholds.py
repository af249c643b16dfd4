#!/usr/bin/env python3
"""Recompute the headline numbers for every built-in code.

For each code: parameters (n, m, d, w), the perturbation constants c_N
and grid c_M, the one-dimensional fixed points of the depolarizing /
dephasing reductions where they exist, the orbit-search thresholds along
both rays, and the arbitrary-channel bound (c_N + c_M)^-1.

Run as:  python3 scripts/reproduce_thresholds.py
"""

import math

from concatcode import (
    RaySpec,
    builtin_names,
    c_constants,
    fixed_point_cross_check,
    general_bound_check,
    get_code,
    threshold,
)


def main() -> None:
    sqrt23 = math.sqrt(2.0 / 3.0)
    print(f"depolarizing fixed point of the five-qubit line: sqrt(2/3) = {sqrt23:.12f}")
    print(f"implied depolarizing threshold: 1 - sqrt(2/3) = {1 - sqrt23:.12f}")
    print()

    rays = {"depol": RaySpec.depolarizing_ray(), "deph": RaySpec.dephasing_ray()}
    for name in builtin_names():
        code = get_code(name)
        d, w = code.distance_and_w()
        constants = c_constants(code)
        print(f"== {name}: [n={code.n}, 1, d={d}, w={w}], 2^m = {1 << code.m}")
        print(f"   c_N = {constants.c_n}, grid c_M = {constants.c_m:.6f}")
        bound = general_bound_check(code)
        print(
            f"   bound (c_N + c_M)^-1 = {bound.value:.6f}"
            f"  [c_M {bound.c_m_source}: {bound.c_m:.6f},"
            f" guaranteed: {bound.bounds_guaranteed}]"
        )
        for label, ray in rays.items():
            value = threshold(code, ray)
            line = f"   threshold {label}: {value:.6f}"
            cross = fixed_point_cross_check(code, ray)
            if cross is not None:
                fixed = ", ".join(f"{r:.6f}" for r in cross["fixed_points"])
                line += (
                    f"  (1d reduction in {cross['variable']}: fixed points [{fixed}],"
                    f" implied {cross['threshold_from_fixed_point']:.6f})"
                )
            print(line)
        print()


if __name__ == "__main__":
    main()
