"""Synthesize measures from the Geronimus tuple family under two phase choices.

The three-tuples come back unchanged while the seven-tuples differ, which is
the non-uniqueness of the measure behind a given (a, b, β) sequence.
"""

from otpuc.favard import PhasePolicy, recovery_report, seven_tuples, synthesize_measure
from otpuc.fixtures import ger_tuples

if __name__ == "__main__":
    t = ger_tuples(6)
    rows = {}
    for p in (PhasePolicy("zero"), PhasePolicy("random", 7)):
        r = recovery_report(t, p, 6)
        print(f"{p.kind:6s}: " + ", ".join(c.line() for c in r.checks))
        rows[p.kind] = seven_tuples(synthesize_measure(t, p), t, 6)
    keys = ("a", "b", "beta", "iota", "jmath", "varsigma", "zeta")
    print("n  " + "  ".join(f"{k:>10s}" for k in keys))
    for n in range(1, 7):
        for kind in rows:
            print(f"{n}{kind[0]} " + "  ".join(f"{rows[kind][n][k]: .3e}" for k in keys))
