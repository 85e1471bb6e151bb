"""Serialization and table rendering (json, csv, latex, plain)."""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Any, Sequence

from .f2theta import Parity
from .picard import (
    D0_NONADM,
    D0_RAM,
    D0_WIRT,
    LAMBDA,
    MBarClass,
    RBarClass,
    m_basis,
    theorem_a_class,
)

FORMATS = ("plain", "json", "csv", "latex")


def format_fraction(x: Fraction | int) -> str:
    """Reduced "p/q" with q > 0; integers print without a denominator."""
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_fraction(text: str) -> Fraction:
    if not isinstance(text, str) or "." in text or "e" in text.lower():
        raise ValueError(f"expected an exact fraction string, got {text!r}")
    return Fraction(text)


def class_to_json(c: MBarClass | RBarClass, parity: Parity | None = None) -> dict[str, Any]:
    doc: dict[str, Any] = {"genus": c.genus, "space": c.space}
    if parity is not None:
        doc["parity"] = str(parity)
    doc["convention"] = "a*lambda - sum b*delta"
    doc["basis"] = [{"label": label, "coefficient": format_fraction(v)} for label, v in c.items()]
    return doc


def class_from_json(doc: dict[str, Any]) -> MBarClass | RBarClass:
    g = int(doc["genus"])
    coeffs = {entry["label"]: parse_fraction(entry["coefficient"]) for entry in doc["basis"]}
    space = doc.get("space")
    if space is None:
        space = MBarClass.space if set(coeffs) == set(m_basis(g)) else RBarClass.space
    cls = MBarClass if space == MBarClass.space else RBarClass
    if [entry["label"] for entry in doc["basis"]] != list(cls.basis(g)):
        raise ValueError(f"basis labels do not match the {space} basis for g={g}")
    return cls.from_mapping(g, coeffs)


# ---------- coefficient symbols: a, b for the even class, c, d for the odd one


def _sub(label: str) -> str:
    # "delta_1:4" -> "1:4", "delta_0^ram" -> "0^ram"
    return label.split("_", 1)[1]


def coefficient_symbol(label: str, parity: Parity, *, latex: bool = False) -> str:
    head = "a" if parity is Parity.EVEN else "c"
    letter = "b" if parity is Parity.EVEN else "d"
    if label == LAMBDA:
        return head
    if not latex:
        return f"{letter}_{_sub(label)}"
    if label == D0_NONADM:
        return f"{letter}_0'"
    if label == D0_WIRT:
        return f"{letter}_0''"
    if label == D0_RAM:
        return f"{letter}_0^{{ram}}"
    return f"{letter}_{{{_sub(label)}}}"


def _latex_fraction(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    sign = "-" if x < 0 else ""
    return f"{sign}\\frac{{{abs(x.numerator)}}}{{{x.denominator}}}"


def _parities(parity: Parity | None) -> list[Parity]:
    return [Parity.EVEN, Parity.ODD] if parity is None else [parity]


def render_classes(g: int, parity: Parity | None, fmt: str) -> str:
    parities = _parities(parity)
    classes = {p: theorem_a_class(g, p) for p in parities}
    labels = next(iter(classes.values())).labels
    if fmt == "json":
        return json.dumps({"genus": g, "classes": [class_to_json(classes[p], p) for p in parities]}, indent=2)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["label"] + [str(p) for p in parities])
        for label in labels:
            writer.writerow([label] + [format_fraction(classes[p][label]) for p in parities])
        return buf.getvalue().rstrip("\n")
    if fmt == "latex":
        return _classes_latex(g, classes, labels)
    if fmt == "plain":
        return _classes_plain(g, classes, labels)
    raise ValueError(f"unknown format {fmt!r}")


def _classes_latex(g: int, classes: dict[Parity, RBarClass], labels: Sequence[str]) -> str:
    # two aligned columns: even left, odd right
    lines = [f"% g = {g}", "\\begin{align*}"]
    rows = []
    for label in labels:
        cells = [
            f"&{coefficient_symbol(label, p, latex=True)}={_latex_fraction(c[label])}"
            for p, c in classes.items()
        ]
        rows.append(", &".join(cells))
    lines.append(",\\\\\n".join(rows) + ".")
    lines.append("\\end{align*}")
    return "\n".join(lines)


def _classes_plain(g: int, classes: dict[Parity, RBarClass], labels: Sequence[str]) -> str:
    header = ["class"] + [f"{p} ({'T^e' if p is Parity.EVEN else 'T^o'})" for p in classes]
    rows = []
    flagged = False
    for label in labels:
        row = [label]
        for p, c in classes.items():
            value = c[label]
            mark = ""
            if value.denominator != 1:
                mark, flagged = " *", True
            row.append(f"{coefficient_symbol(label, p)} = {format_fraction(value)}{mark}")
        rows.append(row)
    out = [f"genus {g}: [T] = a*lambda - sum b*delta", _plain_table(header, rows)]
    if flagged:
        out.append("* fractional coefficient (closed form evaluated literally at small genus)")
    return "\n".join(out)


def _plain_table(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    widths = [max(len(str(r[k])) for r in [header, *rows]) for k in range(len(header))]
    fmt_row = lambda r: "  ".join(str(x).ljust(w) for x, w in zip(r, widths)).rstrip()
    return "\n".join([fmt_row(header), fmt_row(["-" * w for w in widths])] + [fmt_row(r) for r in rows])


def render_table(header: Sequence[str], rows: Sequence[Sequence[Any]], fmt: str, *, title: str = "") -> str:
    """Generic rendering of a list of records."""
    cells = [[format_fraction(x) if isinstance(x, Fraction) else x for x in r] for r in rows]
    if fmt == "json":
        return json.dumps({"title": title, "rows": [dict(zip(header, r)) for r in cells]}, indent=2)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(cells)
        return buf.getvalue().rstrip("\n")
    if fmt == "latex":
        cols = "l" * len(header)
        esc = lambda x: str(x).replace("_", "\\_").replace("{", "\\{").replace("}", "\\}")
        body = [" & ".join(esc(h) for h in header) + " \\\\", "\\hline"]
        body += [" & ".join(esc(x) for x in r) + " \\\\" for r in cells]
        return "\n".join([f"\\begin{{tabular}}{{{cols}}}", *body, "\\end{tabular}"])
    if fmt == "plain":
        text = _plain_table([str(h) for h in header], [[str(x) for x in r] for r in cells])
        return f"{title}\n{text}" if title else text
    raise ValueError(f"unknown format {fmt!r}")
