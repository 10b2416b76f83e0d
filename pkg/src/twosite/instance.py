"""Loading instance files into sites.

Two file kinds are accepted: a finite-category window (``finset-window/1``),
whose coverage is a J(T) name, and a tabulated window (``twocat-window/1``)
whose ``coverage`` key lists the covering 1-cell ids.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .core import WINDOW_SCHEMA, FiniteWindow2Cat, TwoCategory, window_from_dict, window_to_dict
from .errors import InstanceFormatError
from .finset import (
    INSTANCE_SCHEMA,
    OBJECT_COVERS,
    Cat2,
    canonical_hash,
    cat2_instance,
    fixture_categories,
    instance_from_dict,
    instance_to_dict,
    jt_coverage,
)
from .site import TwoSite, extensional, identities_only

COVERAGES = tuple(f"jt_{c}" for c in OBJECT_COVERS) + ("identities_only",)


@dataclass
class Instance:
    """A loaded instance; ``data`` is the effective file contents that certificates hash."""

    kind: str
    K: TwoCategory
    site: TwoSite
    data: dict

    @property
    def hash(self) -> str:
        return canonical_hash(self.data)


def finset_site(K: Cat2, coverage: str) -> TwoSite:
    if coverage == "identities_only":
        return TwoSite(K, identities_only(K))
    if not coverage.startswith("jt_") or coverage[3:] not in OBJECT_COVERS:
        raise InstanceFormatError(f"unknown coverage {coverage!r}; expected one of {', '.join(COVERAGES)}")
    return TwoSite(K, jt_coverage(K, coverage[3:]))


def window_site(w: FiniteWindow2Cat) -> TwoSite:
    ids = w.extra.get("coverage")
    if not isinstance(ids, list):
        raise InstanceFormatError("a window instance needs a 'coverage' list of 1-cell ids")
    unknown = [c for c in ids if not w.is_one_cell(c)]
    if unknown:
        raise InstanceFormatError(f"coverage lists unknown 1-cells: {unknown}")
    return TwoSite(w, extensional(w, ids, w.extra.get("coverage_name", "listed")))


def instance_of(d: dict, coverage: str | None = None) -> Instance:
    """Build the site for instance contents ``d``; ``coverage`` overrides a finset coverage."""
    if not isinstance(d, dict):
        raise InstanceFormatError("instance must be a JSON object")
    schema = d.get("schema")
    if schema == INSTANCE_SCHEMA:
        try:
            K, cov = instance_from_dict(d)
        except (KeyError, TypeError, ValueError) as e:
            raise InstanceFormatError(f"malformed finset instance: {e}") from None
        cov = coverage or cov
        site = finset_site(K, cov)
        return Instance("finset", K, site, instance_to_dict(K, cov))
    if schema == WINDOW_SCHEMA:
        if coverage is not None:
            raise InstanceFormatError("window instances list their coverage; --coverage does not apply")
        w = window_from_dict(d)
        return Instance("window", w, window_site(w), window_to_dict(w))
    raise InstanceFormatError(f"unknown instance schema {schema!r}")


def load_instance(path: str | Path, coverage: str | None = None) -> Instance:
    try:
        d = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as e:
        raise InstanceFormatError(f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise InstanceFormatError(f"{path} is not JSON: {e}") from None
    return instance_of(d, coverage)


def fixture_instance(coverage: str = "jt_surjections", groupoids_only: bool = False) -> Instance:
    """The window {1, C2codisc, D2, BZ2, 1+1} of finite categories."""
    K = cat2_instance(fixture_categories(), groupoids_only)
    return instance_of(instance_to_dict(K, coverage))


def find_object(K: TwoCategory, name: str):
    for x in K.objects():
        if K.label(x) == name:
            return x
    raise InstanceFormatError(f"no object named {name!r}")


def find_one_cell(K: TwoCategory, label: str):
    for f in K.one_cells():
        if K.label(f) == label:
            return f
    raise InstanceFormatError(f"no 1-cell labelled {label!r}")
