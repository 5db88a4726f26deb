#!/usr/bin/env python3
"""Recompute the reference values frozen into the C++ tests.

Everything here is derived from first principles with exact rational
arithmetic (fractions.Fraction), independently of the C++ implementation:
basic transition matrices, chained products, the derived turn constants,
the index function, and the reduced per-connection index formulas.  The
result is written to tests/data/reference_values.json; each value carries
both the exact fraction and its nearest double.

Note that the C++ closed forms evaluate the same quantities in floating
point, so frozen doubles in the tests may differ from float(fraction) in
the last ulp; tests that compare against these values use tolerances that
cover both.
"""

import json
import math
import os
from fractions import Fraction as F

# ----------------------------------------------------------------------------
# basic 3x3 transition matrices as functions of the game parameters
# ----------------------------------------------------------------------------


def basic_matrices(ca, cb, ea, eb):
    """The four basic matrices, keyed by (incoming, outgoing) connection type."""
    m1 = [[cb / ea, 0, 0], [ca / ea, 0, 1], [-eb / ea, 1, 0]]  # (B in, A out)
    m2 = [[cb / ea, 0, 1], [ca / ea, 0, 0], [-eb / ea, 1, 0]]  # (A in, A out)
    m3 = [[0, ca / eb, 0], [1, -ea / eb, 0], [0, cb / eb, 1]]  # (A in, B out)
    m4 = [[0, ca / eb, 1], [1, -ea / eb, 0], [0, cb / eb, 0]]  # (B in, B out)
    return {"M_1": m1, "M_2": m2, "M_3": m3, "M_4": m4}


def matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3)] for i in range(3)]


def mat_pow(m, n):
    out = [[F(int(i == j)) for j in range(3)] for i in range(3)]
    for _ in range(n):
        out = matmul(m, out)
    return out


# ----------------------------------------------------------------------------
# derived turn constants
# ----------------------------------------------------------------------------


def derived_constants(ca, cb, ea, eb):
    return {
        "delta_T": ca * ca * cb / (ea * ea * eb),
        "alpha_T": cb * cb / (ea * ea) - ca * cb / (eb * ea) - eb / ea,
        "beta_T": cb * cb * ca / (ea * ea * eb) - eb * cb / (ea * ea) + ca / ea,
        "gamma_T": ca ** 3 / (ea * ea * eb) + cb * ca / (eb * ea) - eb / ea,
        "theta_T": -ca * ca / (ea * ea) + cb / ea - ca / eb,
        "mu_T": cb * cb * ca / (ea * ea * eb) - ca / ea - ea / eb,
        "nu_T": -cb * ca / (ea * ea) + ca * ca / (ea * eb) + cb / eb,
    }


# ----------------------------------------------------------------------------
# the index function and its two-term reductions
# ----------------------------------------------------------------------------


def f_index(row):
    """min>=0 -> +inf; max<=0 -> -inf; sum==0 -> 0; sum<0 -> sum/max; else -sum/min."""
    if min(row) >= 0:
        return math.inf
    if max(row) <= 0:
        return -math.inf
    s = sum(row)
    if s == 0:
        return F(0)
    return s / max(row) if s < 0 else -s / min(row)


def q_term(q):  # row (q, 1, 0)
    return f_index([q, F(1), F(0)])


def w_term(w):  # row (1, -w, 0)
    return f_index([F(1), -w, F(0)])


def rsp_sigma(ca, cb, ea, eb):
    s31 = min(q_term(-eb / ea), q_term(ca / ea - eb * cb / (ea * ea)))
    s12 = min(q_term(-eb / ea), q_term(cb * ca / (eb * ea) - eb / ea))
    s23 = min(w_term(ea / eb), w_term(ca / ea + ea / eb))
    return s31, s12, s23


def star_sigma(ca, cb, ea, eb):
    """Smallest index of the repeated (B,B) step: f applied to row 2 of (M_4)^k."""
    m4 = basic_matrices(ca, cb, ea, eb)["M_4"]
    vals = []
    p = [[F(int(i == j)) for j in range(3)] for i in range(3)]
    for _ in range(5):
        p = matmul(m4, p)
        vals.append(f_index(p[2]))
    return min(vals)


# ----------------------------------------------------------------------------
# serialization helpers
# ----------------------------------------------------------------------------


def jval(x):
    if isinstance(x, F):
        return {"fraction": f"{x.numerator}/{x.denominator}", "float": float(x)}
    if isinstance(x, float) and math.isinf(x):
        return {"value": "inf" if x > 0 else "-inf"}
    return {"float": float(x)}


def jmap(d):
    return {k: jval(v) for k, v in d.items()}


def main():
    out = {"comment": __doc__.strip().splitlines()[0]}

    # derived constants at the three classification reference points
    points = {
        "(1.2, 4, 1, 0.8)": (F(6, 5), F(4), F(1), F(4, 5)),
        "(2, 3, 1, 0.8)": (F(2), F(3), F(1), F(4, 5)),
        "(3, 2, 1, 0.8)": (F(3), F(2), F(1), F(4, 5)),
    }
    out["derived_constants"] = {
        name: jmap(derived_constants(*p)) for name, p in points.items()
    }

    # the three corrected entries of the printed product tables at (3, 2, 1, 0.8)
    ca, cb, ea, eb = points["(3, 2, 1, 0.8)"]
    basics = basic_matrices(ca, cb, ea, eb)
    m2_5 = mat_pow(basics["M_2"], 5)
    # four-node chain entries built from the aliased basics Mh_2 = M_3,
    # Mh_5 = Mh_3 = M_4: the pair Mh_(5,2) and the triple Mh_(3,2)
    mh_52 = matmul(basics["M_4"], basics["M_3"])
    mh_32 = matmul(basics["M_4"], mh_52)
    out["corrected_entries"] = {
        "(M_2)^5 row 3 col 2": jval(m2_5[2][1]),
        "Mh_(5,2) row 3 col 2": jval(mh_52[2][1]),
        "Mh_(3,2) row 1 col 1": jval(mh_32[0][0]),
    }

    # reduced three-node indices at the branch witness points
    rsp_points = {
        "(1.2, 4, 1, 0.8)": (F(6, 5), F(4), F(1), F(4, 5)),
        "(1.05, 2.5, 1, 0.8)": (F(21, 20), F(5, 2), F(1), F(4, 5)),
        "(0.3, 25, 1, 2)": (F(3, 10), F(25), F(1), F(2)),
        "(0.8, 2.8, 0.8, 1)": (F(4, 5), F(14, 5), F(4, 5), F(1)),
    }
    out["rsp_sigma"] = {}
    for name, p in rsp_points.items():
        s31, s12, s23 = rsp_sigma(*p)
        out["rsp_sigma"][name] = {
            "sigma_31": jval(s31), "sigma_12": jval(s12), "sigma_23": jval(s23)
        }

    # star cycle index at its reference point
    out["star_sigma"] = {"(1.5, 2.5, 1, 0.8)": jval(star_sigma(F(3, 2), F(5, 2), F(1), F(4, 5)))}

    # boundary curves of the region map at e = (1, 0.8)
    out["region_boundaries"] = {
        "five_node_onset": "c_B = 1.25 c_A",
        "all_indices_positive": "c_B = 1.25 c_A - 1",
        "star_right_edge": "c_A = (c_B / 0.8)^(1/3)",
        "three_node_lower": "c_B = c_A^2 + 1.25 c_A",
        "three_node_upper": "c_B = 1.25 c_A^2 / (c_A - 1.25)",
    }

    here = os.path.dirname(os.path.abspath(__file__))
    dest = os.path.join(here, "..", "tests", "data", "reference_values.json")
    os.makedirs(os.path.dirname(dest), exist_ok=True)
    with open(dest, "w") as f:
        json.dump(out, f, indent=2)
        f.write("\n")
    print(f"wrote {os.path.normpath(dest)}")


if __name__ == "__main__":
    main()
