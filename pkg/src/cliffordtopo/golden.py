"""Table payloads, their text/CSV renderings, and the stored reference tables.

Every table subcommand builds its result through one of the ``*_payload``
functions here, so the CLI and the verification suites agree on the schema.
Reference copies live in the package's ``tables/`` directory as JSON (for
comparison) and text (for reading).
"""

from __future__ import annotations

import csv
import io
import json
from importlib import resources

from .clifford import CliffordSignature, chessboard, classify_complex, classify_real
from .representations import (
    complex_grothendieck,
    complex_restriction_quotient,
    grothendieck,
    restriction_quotient,
)
from .tenfold import index_table, k_group, ko_group, ko_table, periodic_table, symmetric_space


def _family(family: str) -> str:
    return "R" if family.upper() == "R" else "C"


def golden_text(name: str, suffix: str = "json") -> str:
    return resources.files("cliffordtopo").joinpath("tables", f"{name}.{suffix}").read_text()


def load_golden(name: str) -> dict:
    return json.loads(golden_text(name, "json"))


# payloads

def chessboard_payload(rows: int = 8, cols: int = 8) -> dict:
    return {"rows": rows, "cols": cols, "table": [[str(a) for a in row] for row in chessboard(rows, cols)]}


def ko_table_payload(family: str = "R") -> dict:
    family = _family(family)
    return {"family": family, "table": [[str(g) for g in row] for row in ko_table(family)]}


def index_table_payload(family: str = "R") -> dict:
    family = _family(family)
    return {"family": family, "table": [[t.form.value for t in row] for row in index_table(family)]}


def periodic_table_payload() -> dict:
    return periodic_table().to_payload()


def groups_payload(family: str = "R") -> dict:
    family = _family(family)
    rows = []
    for k in range(8 if family == "R" else 2):
        if family == "R":
            alg = classify_real(CliffordSignature(k, 0))
            rec, quot, kg = grothendieck(k), restriction_quotient(k), ko_group(k)
        else:
            alg = classify_complex(k)
            rec, quot, kg = complex_grothendieck(k), complex_restriction_quotient(k), k_group(k)
        space = symmetric_space(k, family)
        if family == "R":
            ext = [[sig.p, sig.q] for sig in space.extension]
        else:
            ext = list(space.extension)
        rows.append({
            "k": k,
            "algebra": str(alg),
            "grothendieck": str(rec.group),
            "irrep_dim": rec.irrep_dim,
            "irrep_count": rec.irrep_count,
            "quotient": str(quot),
            "k_group": str(kg),
            "space": {"coset": space.coset, "pi0": str(space.pi0),
                      "cartan_label": space.cartan_label, "extension": ext},
        })
    return {"family": family, "rows": rows}


# renderings

def render_grid(header: list, rows: list[list]) -> str:
    """Left-aligned columns separated by two spaces; no trailing blanks."""
    cells = [[str(c) for c in header]] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    return "\n".join(lines) + "\n"


def render_csv(header: list, rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


_SYMBOLS = {
    "AhatInteger": "A(M)",
    "HalfAhat": "A(M)/2",
    "ModTwoComplexDim": "dimC H",
    "ModTwoQuaternionDim": "dimH H",
    "ToddInteger": "Td(M)",
    "Zero": "0",
}


def tabulate(kind: str, payload: dict) -> tuple[list, list[list]]:
    """Header and rows for the human-readable layout of a payload."""
    if kind in ("chessboard", "ko-table", "index-table"):
        table = payload["table"]
        if kind == "index-table":
            table = [[_SYMBOLS[c] for c in row] for row in table]
        header = ["s\\n"] + [str(n) for n in range(len(table[0]))]
        return header, [[str(s)] + list(row) for s, row in enumerate(table)]
    if kind == "periodic-table":
        header = ["label", "T", "C", "S"] + [str(d) for d in range(8)]
        rows = [[r["label"], r["T"], r["C"], r["S"]] + r["groups"] for r in payload["rows"]]
        return header, rows
    if kind == "groups":
        header = ["k", "algebra", "modules", "irrep_dim", "quotient", "K(pt)", "space", "pi0", "class"]
        rows = [[r["k"], r["algebra"], r["grothendieck"], r["irrep_dim"], r["quotient"], r["k_group"],
                 r["space"]["coset"], r["space"]["pi0"], r["space"]["cartan_label"]] for r in payload["rows"]]
        return header, rows
    raise ValueError(f"no tabular layout for {kind!r}")


def render_text(kind: str, payload: dict) -> str:
    return render_grid(*tabulate(kind, payload))


# golden name -> (subcommand kind, payload builder)
GOLDEN_SOURCES = {
    "chessboard": ("chessboard", lambda: chessboard_payload(8, 8)),
    "ko_table_real": ("ko-table", lambda: ko_table_payload("R")),
    "ko_table_complex": ("ko-table", lambda: ko_table_payload("C")),
    "index_table_real": ("index-table", lambda: index_table_payload("R")),
    "index_table_complex": ("index-table", lambda: index_table_payload("C")),
    "periodic_table": ("periodic-table", periodic_table_payload),
    "groups_real": ("groups", lambda: groups_payload("R")),
    "groups_complex": ("groups", lambda: groups_payload("C")),
}
