#!/usr/bin/env python3
"""Solve a CPLEX-LP file with HiGHS and print '<status> <objective>'.

Exit codes: 0 solved, 3 highspy unavailable, 1 other failure.
"""
import sys

try:
    import highspy
except ImportError:
    print("unavailable")
    sys.exit(3)


def main() -> int:
    if len(sys.argv) != 2:
        print("usage: solve_lp.py MODEL.lp", file=sys.stderr)
        return 1
    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    h.setOptionValue("mip_rel_gap", 0.0)
    h.setOptionValue("mip_abs_gap", 1e-9)
    h.setOptionValue("time_limit", 120.0)
    if h.readModel(sys.argv[1]) != highspy.HighsStatus.kOk:
        print("unreadable")
        return 1
    h.run()
    status = h.getModelStatus()
    name = h.modelStatusToString(status).replace(" ", "_")
    print(f"{name} {h.getInfo().objective_function_value:.12g}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
