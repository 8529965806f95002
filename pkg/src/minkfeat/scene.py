"""Scene files: the JSON input format of the command-line tools.

A scene bundles a patch (form, degree, triangular coefficients), the
trace window, optionally a 1-parameter family, and output options.
Schema violations raise SceneError with a message naming the offending
key; tolerances that affect classification are echoed into every report
for reproducibility.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .patch import LIGHTCONE_FORM, TIMELIKE_FORM, MongePatch
from .family import FamilySpec

__all__ = ["Scene", "SceneError", "load_scene", "parse_scene", "scene_to_dict"]

SCHEMA_VERSION = 1

#: curve colors from the figure conventions: LD black, LPL red, PC blue,
#: MCNC green
DEFAULT_COLORS = {"LD": "#000000", "LPL": "#d62728", "PC": "#1f77b4", "MCNC": "#2ca02c"}


class SceneError(ValueError):
    """Scene file violates the schema."""


@dataclass
class Scene:
    patch: MongePatch
    domain: tuple = ((-0.25, 0.25), (-0.25, 0.25))
    grid: int = 257
    family: FamilySpec | None = None
    colors: dict = field(default_factory=lambda: dict(DEFAULT_COLORS))
    formats: tuple = ("json",)


def _require(cond, msg):
    if not cond:
        raise SceneError(msg)


def parse_scene(data: dict) -> Scene:
    _require(isinstance(data, dict), "scene must be a JSON object")
    _require(data.get("version") == SCHEMA_VERSION, f"version must be {SCHEMA_VERSION}")
    pd = data.get("patch")
    _require(isinstance(pd, dict), "missing patch object")
    form = pd.get("form")
    _require(form in (TIMELIKE_FORM, LIGHTCONE_FORM),
             f"patch.form must be '{TIMELIKE_FORM}' or '{LIGHTCONE_FORM}'")
    degree = pd.get("degree")
    _require(isinstance(degree, int) and 2 <= degree <= 8, "patch.degree must be 2..8")
    coeffs = pd.get("coefficients")
    _require(isinstance(coeffs, list), "patch.coefficients must be a list of [s,i,value]")
    triples = []
    for item in coeffs:
        _require(isinstance(item, (list, tuple)) and len(item) == 3,
                 f"bad coefficient entry {item!r}")
        s, i, v = item
        _require(isinstance(s, int) and isinstance(i, int) and 0 <= i <= s <= degree,
                 f"bad coefficient index ({s},{i})")
        _require(isinstance(v, (int, float)), f"bad coefficient value {v!r}")
        triples.append((s, i, float(v)))
    # the linear normalization is implied by the form tag
    low = [t for t in triples if t[0] < 2]
    _require(not low, "coefficients must have s >= 2; the 1-jet is fixed by the form")
    try:
        if form == TIMELIKE_FORM:
            patch = MongePatch.timelike(degree, triples)
        else:
            patch = MongePatch.lightcone(degree, triples)
    except ValueError as e:
        raise SceneError(str(e)) from e

    dom = data.get("domain", {"halfwidth": 0.25})
    if "halfwidth" in dom:
        h = float(dom["halfwidth"])
        _require(h > 0, "domain.halfwidth must be positive")
        cx, cy = dom.get("center", [0.0, 0.0])
        domain = ((cx - h, cx + h), (cy - h, cy + h))
    else:
        _require(all(k in dom for k in ("xmin", "xmax", "ymin", "ymax")),
                 "domain needs halfwidth or xmin/xmax/ymin/ymax")
        domain = ((float(dom["xmin"]), float(dom["xmax"])),
                  (float(dom["ymin"]), float(dom["ymax"])))
        _require(domain[0][0] < domain[0][1] and domain[1][0] < domain[1][1],
                 "empty domain rectangle")

    grid = data.get("grid", 257)
    _require(isinstance(grid, int) and grid >= 16, "grid must be an integer >= 16")

    family = None
    if "family" in data:
        fd = data["family"]
        _require(isinstance(fd, dict), "family must be an object")
        pert_list = fd.get("perturbation")
        _require(isinstance(pert_list, list) and pert_list,
                 "family.perturbation must be a nonempty list of [s,i,[t-coeffs]]")
        pert = {}
        for item in pert_list:
            _require(isinstance(item, (list, tuple)) and len(item) == 3,
                     f"bad perturbation entry {item!r}")
            s, i, tc = item
            _require(isinstance(s, int) and isinstance(i, int) and 0 <= i <= s <= degree,
                     f"bad perturbation index ({s},{i})")
            _require(isinstance(tc, (list, tuple)) and
                     all(isinstance(c, (int, float)) for c in tc),
                     f"perturbation t-coefficients must be numbers: {tc!r}")
            pert[(s, i)] = tuple(float(c) for c in tc)
        rng = fd.get("range", [-0.01, 0.01])
        _require(len(rng) == 2 and rng[0] != rng[1],
                 "family.range must be two distinct endpoints")
        samples = fd.get("samples", 41)
        _require(isinstance(samples, int) and samples >= 3, "family.samples must be >= 3")
        family = FamilySpec(patch, pert, (float(rng[0]), float(rng[1])), samples)

    out = data.get("output", {})
    colors = dict(DEFAULT_COLORS)
    colors.update(out.get("colors", {}))
    formats = tuple(out.get("formats", ["json"]))
    _require(all(f in ("json", "csv", "svg") for f in formats),
             "output.formats entries must be json|csv|svg")
    return Scene(patch, domain, grid, family, colors, formats)


def load_scene(path) -> Scene:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as e:
            raise SceneError(f"invalid JSON: {e}") from e
    return parse_scene(data)


def scene_to_dict(scene: Scene) -> dict:
    """Inverse of parse_scene on valid scenes (round-trip identity)."""
    patch = scene.patch
    coeffs = [
        [s, i, v]
        for s, i, v in patch.f.to_triangular()
        if s >= 2 and v != 0.0
    ]
    (x0, x1), (y0, y1) = scene.domain
    data = {
        "version": SCHEMA_VERSION,
        "patch": {"form": patch.form, "degree": patch.degree, "coefficients": coeffs},
        "domain": {"xmin": x0, "xmax": x1, "ymin": y0, "ymax": y1},
        "grid": scene.grid,
        "output": {"colors": scene.colors, "formats": list(scene.formats)},
    }
    if scene.family is not None:
        data["family"] = {
            "perturbation": [[s, i, list(tc)] for (s, i), tc in
                             sorted(scene.family.perturbation.items())],
            "range": list(scene.family.t_range),
            "samples": scene.family.samples,
        }
    return data
