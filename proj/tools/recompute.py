#!/usr/bin/env python3
"""Recomputes every report in a divlab artifact directory from the CSV tables.

Reads tables/*.csv and reports/*.json, re-derives each lhs/rhs, norm,
certification ratio, and bootstrap sum directly from the serialized table
entries, and compares against the reported values to a relative tolerance.
Exits nonzero on the first mismatch. This is a separate implementation of
the report formulas, so agreement means the reports follow from the tables.
"""

import argparse
import csv
import json
import math
import sys
from pathlib import Path

REL_TOL = 1e-10


class Table:
    def __init__(self):
        self.entries = {}  # (i, word) -> value

    def entry(self, i, word):
        return self.entries[(i, word)]

    def tensor_norm(self, i, j):
        total = 0.0
        for (ei, word), value in self.entries.items():
            wlen = 0 if word == "-" else len(word)
            if ei == i and wlen == j:
                total += value
        return total


def load_tables(table_dir):
    tables = {}
    for path in sorted(Path(table_dir).glob("*.csv")):
        t = Table()
        with open(path, newline="") as fh:
            for row in csv.DictReader(fh):
                t.entries[(int(row["i"]), row["word"])] = float(row["value"])
        tables[path.stem] = t
    return tables


def close(a, b, context, failures, tol=REL_TOL):
    if isinstance(b, str):  # "inf"/"nan" markers
        b = float(b.replace("inf", "inf"))
    scale = max(1.0, abs(a), abs(b))
    if math.isinf(a) and math.isinf(b):
        return
    if abs(a - b) > tol * scale:
        failures.append(f"{context}: recomputed {a!r} vs reported {b!r}")


def rho(table, eps1, eps2, m):
    total, b_part, bc_part = 0.0, 0.0, 0.0
    order_sums = [0.0] * (m + 1)
    for i in range(m + 1):
        for j in range(m + 1 - i):
            term = (eps1**i) * (eps2**j) / math.factorial(i + j) * table.tensor_norm(i, j)
            order_sums[i + j] += term
            if i + j >= 3:
                b_part += term
            else:
                bc_part += term
    total = b_part + bc_part
    return total, b_part, bc_part, order_sums


def psi(v, q, eps1, eps2, m):
    vel = sum(
        (eps1**i) * (eps2**j) / math.factorial(i + j) * v.tensor_norm(i, j)
        for i in range(m + 1)
        for j in range(m + 1 - i)
    )
    high = sum(
        (eps1**i) * (eps2**j) / math.factorial(i + j) * q.tensor_norm(i - 1, j)
        for i in range(2, m + 1)
        for j in range(m + 1 - i)
    )
    mid = sum(
        eps1 * (eps2**j) / math.factorial(1 + j) * q.tensor_norm(0, j) for j in range(m)
    )
    low = sum(
        (eps2**j) / math.factorial(j) * q.tensor_norm(0, j - 1) for j in range(1, m + 1)
    )
    return vel + high + mid + low


def leibniz_rhs(kind, base, i, j, k):
    rhs = 0.0
    if kind == "lap":
        if i == 0:
            for jp in range(1, j + 1):
                w = math.factorial(j) / math.factorial(j - jp) * k**jp
                rhs += w * base.tensor_norm(2, j - jp)
                rhs += w * jp * base.tensor_norm(1, j - jp)
        else:
            for jp in range(j):
                for ip in range(i + 1):
                    i3 = i - ip
                    rhs += (
                        math.comb(ip + j - jp, ip)
                        * math.factorial(i)
                        * math.factorial(j)
                        / (math.factorial(i3) * math.factorial(jp))
                        * k ** (ip + j - jp)
                        * base.tensor_norm(i3 + 2, jp)
                    )
    else:
        if i == 0:
            for jp in range(1, j + 1):
                rhs += (
                    math.factorial(j)
                    / math.factorial(j - jp)
                    * k**jp
                    * base.tensor_norm(1, j - jp)
                )
        else:
            for jp in range(j):
                for ip in range(i + 1):
                    rhs += (
                        math.comb(ip + j - jp, ip)
                        * math.factorial(i)
                        * math.factorial(j)
                        / (math.factorial(i - ip) * math.factorial(jp))
                        * k ** (ip + j - jp)
                        * base.tensor_norm(i - ip + 1, jp)
                    )
    return rhs


def check_lemmas(tables, report, failures):
    for r in report["reports"]:
        lemma, i, j, tag = r["lemma"], r["i"], r["j"], r["tag"]
        ctx = f"lemmas:{lemma}(i={i},j={j},{tag})"
        if lemma in ("eq19", "eq20", "eq26"):
            v, q, f = tables["v"], tables["q"], tables["f"]
            cv, cq = tables["comm_lap_v"], tables["comm_grad_q"]
            if lemma == "eq19":
                lhs = v.tensor_norm(i, j) + q.tensor_norm(i - 1, j)
                rhs = (
                    v.tensor_norm(i - 1, j + 1)
                    + v.tensor_norm(i - 2, j)
                    + cv.tensor_norm(i - 2, j)
                    + cq.tensor_norm(i - 2, j)
                )
            elif lemma == "eq20":
                lhs = v.tensor_norm(1, j) + q.tensor_norm(0, j)
                rhs = cv.tensor_norm(0, j - 1) + cq.tensor_norm(0, j - 1) + f.tensor_norm(0, j)
            else:
                lhs = v.tensor_norm(0, j) + q.tensor_norm(0, j - 1)
                rhs = (
                    cv.tensor_norm(0, j - 2)
                    + cq.tensor_norm(0, j - 2)
                    + f.tensor_norm(0, j - 1)
                )
        elif lemma in ("eq27", "eq28"):
            lhs = tables["comm_lap_v"].tensor_norm(i, j)
            rhs = leibniz_rhs("lap", tables["v"], i, j, 1.0)
        elif lemma in ("eq29", "eq30"):
            lhs = tables["comm_grad_q"].tensor_norm(i, j)
            rhs = leibniz_rhs("grad", tables["q"], i, j, 1.0)
        elif lemma == "eq22":
            v = tables[f"h2_{tag}_v"]
            q = tables[f"h2_{tag}_q"]
            g = tables[f"h2_{tag}_g"]
            lhs = (
                v.tensor_norm(0, 0)
                + v.tensor_norm(1, 0)
                + v.tensor_norm(2, 0)
                + q.tensor_norm(1, 0)
            )
            rhs = g.tensor_norm(0, 0) + v.tensor_norm(0, 1) + v.tensor_norm(1, 1) + v.tensor_norm(0, 0)
        else:
            failures.append(f"{ctx}: unknown lemma id")
            continue
        close(lhs, r["lhs"], ctx + " lhs", failures)
        close(rhs, r["rhs"], ctx + " rhs", failures)
        if not r["degenerate"] and isinstance(r["ratio"], float):
            close(lhs / rhs, r["ratio"], ctx + " ratio", failures)
        if "fitted_k" in r and isinstance(r["fitted_k"], float) and lhs > 0.0:
            kind = "lap" if lemma in ("eq27", "eq28") else "grad"
            base = tables["v"] if kind == "lap" else tables["q"]
            k = r["fitted_k"]
            # minimal K: rhs(K) reaches lhs at K, not at K*(1 - 1e-6).
            if leibniz_rhs(kind, base, i, j, k) < lhs * (1 - 1e-6):
                failures.append(f"{ctx}: fitted K too small")
            if k > 0 and leibniz_rhs(kind, base, i, j, k * (1 - 1e-6)) > lhs:
                failures.append(f"{ctx}: fitted K not minimal")


def check_norms(tables, report, failures):
    eps1, eps2, m = report["eps1"], report["eps2"], report["m"]
    for subject, key in (("f", "rho_f"), ("u", "rho_u"), ("grad_phi", "rho_grad_phi")):
        if key not in report:
            continue
        total, b_part, bc_part, order_sums = rho(tables[subject], eps1, eps2, m)
        close(total, report[key]["total"], f"norms:{key}.total", failures)
        close(b_part, report[key]["b_part"], f"norms:{key}.b_part", failures)
        close(bc_part, report[key]["bc_part"], f"norms:{key}.bc_part", failures)
        for order, value in enumerate(report[key]["order_sums"]):
            close(order_sums[order], value, f"norms:{key}.order_sums[{order}]", failures)
    close(psi(tables["v"], tables["q"], eps1, eps2, m), report["psi"]["total"],
          "norms:psi.total", failures)
    if "rho_u" in report and report["rho_f"]["total"] > 0:
        close(report["rho_u"]["total"] / report["rho_f"]["total"],
              report["ratio_rho_u_over_rho_f"], "norms:ratio", failures)


def check_certify(tables, report, failures):
    table = tables[report["subject"]]
    for pt in report["grid"]:
        # ratios cover m = 3 .. m_total - 1
        _, _, _, order_sums = rho(table, pt["eps1"], pt["eps2"], len(pt["ratios"]) + 3)
        certified = True
        for idx, reported in enumerate(pt["ratios"]):
            m = 3 + idx
            am, am1 = order_sums[m], order_sums[m + 1]
            ratio = 0.0 if am1 <= 5e-324 else math.inf
            if am > 5e-324:
                ratio = am1 / am
            if not isinstance(reported, str):
                close(ratio, reported, f"certify:eps2={pt['eps2']} m={m}", failures)
            if not ratio <= 0.9:
                certified = False
        if certified != pt["certified"]:
            failures.append(f"certify:eps2={pt['eps2']}: certified flag mismatch")


def check_bootstrap(tables, report, failures):
    v, q, f = tables["v"], tables["q"], tables["f"]
    m = report["m"]
    for pt in report["grid"]:
        eps1, eps2 = pt["eps1"], pt["eps2"]
        s1 = sum(
            (eps1**i) * (eps2**j) / math.factorial(i + j) * v.tensor_norm(i, j)
            + (eps1 ** (i - 1)) * (eps2**j) / math.factorial(i + j) * q.tensor_norm(i, j)
            for i in range(2, m + 1)
            for j in range(1, m + 1 - i)
        )
        s2 = sum(
            eps1 * (eps2**j) / math.factorial(j + 1) * (v.tensor_norm(1, j) + q.tensor_norm(0, j))
            for j in range(2, m)
        )
        s3 = sum(
            (eps2**j) / math.factorial(j) * (v.tensor_norm(0, j) + q.tensor_norm(0, j - 1))
            for j in range(3, m + 1)
        )
        close(s1, pt["s1"], f"bootstrap:eps2={eps2} s1", failures)
        close(s2, pt["s2"], f"bootstrap:eps2={eps2} s2", failures)
        close(s3, pt["s3"], f"bootstrap:eps2={eps2} s3", failures)
        close(psi(v, q, eps1, eps2, m), pt["psi"], f"bootstrap:eps2={eps2} psi", failures)
        close(rho(f, eps1, eps2, m)[0], pt["rho_f"], f"bootstrap:eps2={eps2} rho_f", failures)
        if pt["pass"] != (s1 <= pt["psi"] / 10 and s2 <= pt["psi"] / 25 + pt["rho_f"]
                          and s3 <= pt["psi"] / 25 + pt["rho_f"]):
            failures.append(f"bootstrap:eps2={eps2}: pass flag mismatch")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("bundle", help="artifact directory written by divlab")
    args = parser.parse_args()
    bundle = Path(args.bundle)

    tables = load_tables(bundle / "tables")
    failures = []
    checked = 0

    for name, checker in (
        ("lemmas", check_lemmas),
        ("norms", check_norms),
        ("certify", check_certify),
        ("bootstrap", check_bootstrap),
    ):
        path = bundle / "reports" / f"{name}.json"
        if path.exists():
            with open(path) as fh:
                checker(tables, json.load(fh), failures)
            checked += 1

    if not checked:
        print("recompute: no reports found", file=sys.stderr)
        return 1
    if failures:
        for f in failures:
            print(f"MISMATCH {f}", file=sys.stderr)
        return 1
    print(f"recompute: {checked} report file(s) verified against the tables")
    return 0


if __name__ == "__main__":
    sys.exit(main())
