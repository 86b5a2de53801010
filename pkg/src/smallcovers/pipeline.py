"""Pipeline orchestration: build -> enumerate -> classify -> report.

Artifacts are deterministic, diffable text files keyed by a content hash of
their inputs, so re-running a stage with unchanged inputs reuses the cached
result instead of repeating the search.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path

from . import enumeration, polytope, symmetry
from .errors import FormatError, SearchInfeasibleError, ValidationError

# a search is refused beyond this size without the explicit override
_FEASIBLE_FACETS = 20
_FEASIBLE_ALPHABET = 5

_KINDS = {"dodecahedron": "dodecahedron", "120cell": "cell120"}


@dataclass
class RunConfig:
    polytope: str = "dodecahedron"
    alphabet: tuple[int, ...] | None = None
    out_dir: Path = Path("out")
    split_depth: int = 0
    max_workers: int | None = None
    force_infeasible: bool = False
    report_format: str = "csv"


def resolve_polytope(spec: str) -> tuple[polytope.CombPolytope, str]:
    """Build a named kind or load a file:PATH polytope."""
    if spec in _KINDS:
        return polytope.build_polytope(_KINDS[spec]), spec
    if spec.startswith("file:"):
        path = Path(spec[len("file:"):])
        try:
            text = path.read_text()
        except OSError as exc:
            raise FormatError(f"cannot read polytope file {path}: {exc}") from exc
        return polytope.deserialize(text), spec
    raise FormatError(
        f"unknown polytope {spec!r}; expected dodecahedron, 120cell or file:PATH"
    )


def default_alphabet(p: polytope.CombPolytope, spec: str) -> tuple[int, ...]:
    if spec == "120cell":
        return (1, 2, 4, 8, 15)
    return tuple(range(1, 1 << p.dim))


def check_feasible(p: polytope.CombPolytope, alphabet: tuple[int, ...], force: bool) -> None:
    if force:
        return
    if p.facet_count > _FEASIBLE_FACETS and len(alphabet) > _FEASIBLE_ALPHABET:
        raise SearchInfeasibleError(
            f"search over {len(alphabet)} labels on {p.facet_count} facets is "
            "expected to be infeasible; pass --force-infeasible to run it anyway"
        )


def _alphabet_key(alphabet: tuple[int, ...]) -> str:
    return ",".join(str(x) for x in alphabet)


def write_labelings(
    path: Path, labelings: list[tuple[int, ...]], poly_hash: str, alphabet: tuple[int, ...]
) -> None:
    lines = [f"# polytope={poly_hash} alphabet={_alphabet_key(alphabet)}"]
    lines += [",".join(str(x) for x in lab) for lab in labelings]
    path.write_text("\n".join(lines) + "\n")


def read_labelings(path: Path) -> tuple[str, tuple[int, ...], list[tuple[int, ...]]]:
    """Returns (polytope hash, alphabet, labelings); raises FormatError."""
    try:
        lines = path.read_text().splitlines()
    except OSError as exc:
        raise FormatError(f"cannot read labelings file {path}: {exc}") from exc
    if not lines or not lines[0].startswith("# polytope="):
        raise FormatError(f"{path} is missing the labelings header")
    header = lines[0][2:].split()
    fields = dict(part.split("=", 1) for part in header if "=" in part)
    if "polytope" not in fields or "alphabet" not in fields:
        raise FormatError(f"{path} header lacks polytope/alphabet keys")
    try:
        alphabet = tuple(int(x) for x in fields["alphabet"].split(","))
        labelings = [
            tuple(int(x) for x in line.split(",")) for line in lines[1:] if line
        ]
    except ValueError as exc:
        raise FormatError(f"{path} contains a malformed tuple: {exc}") from exc
    return fields["polytope"], alphabet, labelings


def _classes_payload(classes: list[symmetry.EquivClass], dim: int) -> list[dict]:
    return [
        {
            "representative": list(c.representative),
            "orbit_size": c.orbit_size,
            "stabilizer_order": c.stabilizer_order,
            "group_name": c.group_name,
            "fingerprint": c.fingerprint.profile(),
            "abelian": c.fingerprint.abelian,
            "isometry_order": symmetry.isometry_order(c.stabilizer_order, dim),
        }
        for c in classes
    ]


def run_pipeline(config: RunConfig) -> dict:
    """Run the full pipeline, writing artifacts into config.out_dir.

    Artifacts: polytope.json, labelings.txt, classes.<fmt>, summary.json.
    Returns the summary dict.
    """
    p, spec = resolve_polytope(config.polytope)
    alphabet = config.alphabet
    if alphabet is None:
        alphabet = default_alphabet(p, spec)
    alphabet = enumeration.validate_alphabet(alphabet, p.dim)
    check_feasible(p, alphabet, config.force_infeasible)

    out = Path(config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    poly_text = polytope.serialize(p)
    poly_hash = hashlib.sha256(poly_text.encode()).hexdigest()
    (out / "polytope.json").write_text(poly_text)
    run_key = hashlib.sha256(
        f"{poly_hash}|{_alphabet_key(alphabet)}".encode()
    ).hexdigest()

    summary_path = out / "summary.json"
    if summary_path.exists():
        try:
            cached = json.loads(summary_path.read_text())
        except json.JSONDecodeError:
            cached = {}
        if cached.get("run_key") == run_key:
            return cached

    labelings_path = out / "labelings.txt"
    labelings: list[tuple[int, ...]] | None = None
    if labelings_path.exists():
        try:
            file_hash, file_alphabet, cached_labelings = read_labelings(labelings_path)
        except FormatError:
            file_hash, file_alphabet, cached_labelings = "", (), []
        if file_hash == poly_hash and file_alphabet == alphabet:
            labelings = cached_labelings
    if labelings is None:
        labelings = enumeration.enumerate_labelings(
            p, alphabet, split_depth=config.split_depth, max_workers=config.max_workers
        )
        write_labelings(labelings_path, labelings, poly_hash, alphabet)

    # every labeling on disk must re-validate on reload
    _, _, reloaded = read_labelings(labelings_path)
    for lab in reloaded:
        if not enumeration.is_characteristic(lab, p):
            raise ValidationError([f"stored labeling {lab} fails the vertex condition"])

    classes = symmetry.equivalence_classes(p, reloaded)
    histogram: dict[int, int] = {}
    for c in classes:
        histogram[c.stabilizer_order] = histogram.get(c.stabilizer_order, 0) + 1

    group_order = (
        len(classes[0].stabilizer) * classes[0].orbit_size if classes else None
    )
    summary = {
        "run_key": run_key,
        "polytope": config.polytope,
        "dimension": p.dim,
        "facet_count": p.facet_count,
        "polytope_hash": poly_hash,
        "alphabet": list(alphabet),
        "labeling_count": len(reloaded),
        "class_count": len(classes),
        "symmetry_group_order": group_order,
        "stabilizer_histogram": [
            [order, histogram[order]] for order in sorted(histogram)
        ],
        "classes": _classes_payload(classes, p.dim),
    }
    summary_path.write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    report_text = render_report(summary, config.report_format)
    ext = "csv" if config.report_format == "csv" else "md"
    (out / f"classes.{ext}").write_text(report_text)
    return summary


def render_report(summary: dict, fmt: str = "csv") -> str:
    """One row per class, sorted by representative; byte-stable."""
    if fmt not in ("csv", "markdown"):
        raise ValueError(f"unknown report format {fmt!r}")
    rows = [
        (
            " ".join(str(x) for x in c["representative"]),
            str(c["orbit_size"]),
            str(c["stabilizer_order"]),
            c["group_name"],
            str(c["isometry_order"]),
        )
        for c in summary["classes"]
    ]
    if fmt == "csv":
        lines = ["representative,orbit_size,stabilizer_order,group_name,isometry_order"]
        lines += [",".join(row) for row in rows]
        return "\n".join(lines) + "\n"
    lines = [
        "| representative | orbit size | stabilizer order | group | isometry order |",
        "| --- | ---: | ---: | --- | ---: |",
    ]
    lines += ["| " + " | ".join(row) + " |" for row in rows]
    return "\n".join(lines) + "\n"


def report_command(out_dir: Path, fmt: str) -> str:
    """Regenerate the classes report from an existing summary."""
    summary_path = Path(out_dir) / "summary.json"
    if not summary_path.exists():
        raise FormatError(f"missing artifact {summary_path}; run the pipeline first")
    try:
        summary = json.loads(summary_path.read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"corrupt summary file: {exc}") from exc
    text = render_report(summary, fmt)
    ext = "csv" if fmt == "csv" else "md"
    (Path(out_dir) / f"classes.{ext}").write_text(text)
    return text


def restrict_command(
    out_dir: Path,
    facet: int,
    labeling_index: int = 0,
    classes_dir: Path | None = None,
) -> dict:
    """Restrict a stored labeling to one facet; optionally classify the result.

    `facet` is 1-based, matching the position of the label in the tuple.
    """
    out = Path(out_dir)
    poly_path = out / "polytope.json"
    if not poly_path.exists():
        raise FormatError(f"missing artifact {poly_path}; run the pipeline first")
    p = polytope.deserialize(poly_path.read_text())
    _, _, labelings = read_labelings(out / "labelings.txt")
    if not 0 <= labeling_index < len(labelings):
        raise ValueError(f"labeling index {labeling_index} out of range")
    lab = labelings[labeling_index]
    if not enumeration.is_characteristic(lab, p):
        raise ValidationError([f"stored labeling {lab} fails the vertex condition"])
    if not 1 <= facet <= p.facet_count:
        raise ValueError(f"facet {facet} out of range 1..{p.facet_count}")
    sub, sub_labels = symmetry.restrict_labeling(lab, facet - 1, p)
    result = {
        "facet": facet,
        "labeling_index": labeling_index,
        "restricted_labeling": list(sub_labels),
        "characteristic": enumeration.is_characteristic(sub_labels, sub),
        "class_index": None,
        "class_representative": None,
        "notice": None,
    }
    if classes_dir is None:
        result["notice"] = "no classification artifact given; class lookup skipped"
        return result

    classes_summary = Path(classes_dir) / "summary.json"
    if not classes_summary.exists():
        result["notice"] = f"missing {classes_summary}; class lookup skipped"
        return result
    summary = json.loads(classes_summary.read_text())
    canon, canon_spec = resolve_polytope(summary["polytope"])
    if not canon.symmetry_generators:
        result["notice"] = "classification polytope has no symmetry data; lookup skipped"
        return result
    transported = symmetry.transport_labeling(sub, sub_labels, canon)
    if transported is None:
        result["notice"] = "facet polytope does not match the classification polytope"
        return result
    rep = symmetry.canonical_representative(
        transported, symmetry.symmetry_position_generators(canon), canon.dim
    )
    reps = [tuple(c["representative"]) for c in summary["classes"]]
    if rep not in reps:
        result["notice"] = "restricted labeling does not belong to any stored class"
        return result
    result["class_index"] = reps.index(rep)
    result["class_representative"] = list(rep)
    return result
