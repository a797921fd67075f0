"""Exact JSON interchange for point sets.

Documents use format "pattern-pointset/1": a conductor, a list of points
in the canonical "M:[c0,c1,...]" coefficient form, and a free-form
metadata object.  Round-trips are exact because coefficients stay
rational end to end.
"""

from __future__ import annotations

import json
from typing import IO

from .errors import DocumentError
from .exactnum import from_text
from .geom import PointSet

__all__ = ["FORMAT_VERSION", "to_document", "from_document",
           "dump_point_set", "load_point_set", "dumps_point_set",
           "loads_point_set"]

FORMAT_VERSION = "pattern-pointset/1"


def to_document(points: PointSet, metadata: dict | None = None) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "conductor": points.order,
        "points": [p.to_text() for p in points],
        "metadata": dict(metadata or {}),
    }


def from_document(doc: dict) -> tuple[PointSet, dict]:
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        raise DocumentError(
            f"unsupported format_version {version!r}; expected "
            f"{FORMAT_VERSION!r}")
    conductor = doc.get("conductor")
    if not isinstance(conductor, int) or conductor < 1:
        raise DocumentError("conductor must be a positive integer")
    raw = doc.get("points")
    if not isinstance(raw, list) or not all(isinstance(p, str) for p in raw):
        raise DocumentError("points must be a list of coefficient strings")
    pts = []
    for text in raw:
        try:
            p = from_text(text)
        except ValueError as exc:
            raise DocumentError(str(exc)) from exc
        if conductor % p.order:
            raise DocumentError(
                f"point order {p.order} does not divide the conductor "
                f"{conductor}")
        pts.append(p.lift(conductor))
    metadata = doc.get("metadata", {})
    if not isinstance(metadata, dict):
        raise DocumentError("metadata must be a JSON object")
    try:
        return PointSet(pts, order=conductor), metadata
    except Exception as exc:
        raise DocumentError(str(exc)) from exc


def dumps_point_set(points: PointSet, metadata: dict | None = None) -> str:
    return json.dumps(to_document(points, metadata), indent=2,
                      sort_keys=True) + "\n"


def loads_point_set(text: str) -> tuple[PointSet, dict]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}") from exc
    return from_document(doc)


def dump_point_set(points: PointSet, fp: IO[str] | str,
                   metadata: dict | None = None) -> None:
    text = dumps_point_set(points, metadata)
    if isinstance(fp, str):
        with open(fp, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        fp.write(text)


def load_point_set(fp: IO[str] | str) -> tuple[PointSet, dict]:
    if isinstance(fp, str):
        with open(fp, "r", encoding="utf-8") as fh:
            return loads_point_set(fh.read())
    return loads_point_set(fp.read())
