#!/usr/bin/env python3
"""MILP backend honoring the exchange-file contract:

    milp_backend.py MODEL.mps OUT.json [REL_GAP] [TIME_LIMIT_SEC] [THREADS]

Reads the MPS model, solves it with HiGHS (via scipy.optimize.milp) and
writes OUT.json with fields:

    status      optimal | gap_reached | time_limit | infeasible | error
    objective   incumbent objective value
    dual_bound  proven lower bound (minimization)
    gap         relative gap reported by the solver
    runtime_sec wall-clock seconds
    assignment  {variable name: value}

Any command that consumes an MPS file and writes this JSON schema can serve
as a drop-in replacement.
"""

import json
import sys
import time


def parse_mps(path):
    rows = []          # (name, sense)
    row_index = {}
    cols = {}          # name -> {row: coef}
    col_order = []
    integrality = {}
    rhs = {}
    bounds = {}        # name -> [lb, ub]
    obj_row = None
    section = None
    in_int = False

    with open(path) as f:
        for raw in f:
            line = raw.rstrip("\n")
            if not line.strip() or line.startswith("*"):
                continue
            if not line[0].isspace():
                section = line.split()[0]
                continue
            fields = line.split()
            if section == "OBJSENSE":
                if fields[0] not in ("MIN", "MINIMIZE"):
                    raise ValueError("only minimization is supported")
                continue
            if section == "ROWS":
                sense, name = fields[0], fields[1]
                if sense == "N":
                    obj_row = name
                else:
                    row_index[name] = len(rows)
                    rows.append((name, sense))
                continue
            if section == "COLUMNS":
                if len(fields) >= 3 and fields[1] == "'MARKER'":
                    in_int = fields[2] == "'INTORG'"
                    continue
                name = fields[0]
                if name not in cols:
                    cols[name] = {}
                    col_order.append(name)
                    integrality[name] = 1 if in_int else 0
                for rname, val in zip(fields[1::2], fields[2::2]):
                    cols[name][rname] = cols[name].get(rname, 0.0) + float(val)
                continue
            if section == "RHS":
                for rname, val in zip(fields[1::2], fields[2::2]):
                    rhs[rname] = float(val)
                continue
            if section == "BOUNDS":
                btype, name, val = fields[0], fields[2], float(fields[3])
                bounds.setdefault(name, [0.0, float("inf")])
                if btype == "UP":
                    bounds[name][1] = val
                elif btype == "LO":
                    bounds[name][0] = val
                elif btype == "FX":
                    bounds[name] = [val, val]
                else:
                    raise ValueError(f"unsupported bound type {btype}")
                continue
    return rows, row_index, cols, col_order, integrality, rhs, bounds, obj_row


def main():
    if len(sys.argv) < 3:
        sys.stderr.write(__doc__)
        return 2
    model_path, out_path = sys.argv[1], sys.argv[2]
    rel_gap = float(sys.argv[3]) if len(sys.argv) > 3 else 0.0
    time_limit = float(sys.argv[4]) if len(sys.argv) > 4 else 0.0

    t0 = time.time()
    result = {"status": "error", "message": ""}
    try:
        import numpy as np
        from scipy import sparse
        from scipy.optimize import Bounds, LinearConstraint, milp

        (rows, row_index, cols, col_order, integrality, rhs, bounds,
         obj_row) = parse_mps(model_path)

        ncol = len(col_order)
        nrow = len(rows)
        c = np.zeros(ncol)
        obj_const = -rhs.get(obj_row, 0.0) if obj_row else 0.0
        data, ri, ci = [], [], []
        for j, name in enumerate(col_order):
            for rname, val in cols[name].items():
                if rname == obj_row:
                    c[j] = val
                else:
                    ri.append(row_index[rname])
                    ci.append(j)
                    data.append(val)
        A = sparse.csr_matrix((data, (ri, ci)), shape=(nrow, ncol))
        lo = np.full(nrow, -np.inf)
        hi = np.full(nrow, np.inf)
        for idx, (name, sense) in enumerate(rows):
            b = rhs.get(name, 0.0)
            if sense in ("L", "E"):
                hi[idx] = b
            if sense in ("G", "E"):
                lo[idx] = b
        lbs = np.array([bounds.get(n, [0.0, np.inf])[0] for n in col_order])
        ubs = np.array([bounds.get(n, [0.0, np.inf])[1] for n in col_order])
        integ = np.array([integrality[n] for n in col_order])

        options = {"mip_rel_gap": rel_gap, "disp": False}
        if time_limit > 0:
            options["time_limit"] = time_limit
        res = milp(c=c, constraints=LinearConstraint(A, lo, hi),
                   integrality=integ, bounds=Bounds(lbs, ubs), options=options)

        runtime = time.time() - t0
        if res.status == 2:
            result = {"status": "infeasible", "runtime_sec": runtime}
        elif res.x is None:
            result = {"status": "time_limit" if res.status == 1 else "error",
                      "message": res.message, "runtime_sec": runtime}
        else:
            gap = float(res.mip_gap) if res.mip_gap is not None else 0.0
            if res.status == 0:
                status = "optimal" if gap <= 1e-9 else "gap_reached"
            elif res.status == 1:
                status = "time_limit"
            else:
                status = "error"
            dual = res.mip_dual_bound
            if dual is None:
                dual = res.fun
            result = {
                "status": status,
                "objective": float(res.fun) + obj_const,
                "dual_bound": float(dual) + obj_const,
                "gap": gap,
                "runtime_sec": runtime,
                "message": res.message,
                "assignment": {n: float(v) for n, v in zip(col_order, res.x)},
            }
    except Exception as exc:  # report through the contract, not the exit code
        result = {"status": "error", "message": repr(exc),
                  "runtime_sec": time.time() - t0}

    with open(out_path, "w") as f:
        json.dump(result, f)
    return 0 if result["status"] != "error" else 1


if __name__ == "__main__":
    sys.exit(main())
