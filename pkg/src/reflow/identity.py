"""Canonical document bytes and the reflow identity point derived from them."""

import json

from .curve import PointG1, hash_to_point_g1
from .errors import InvalidInput


def canonicalize(doc) -> bytes:
    """Sorted-key, whitespace-free UTF-8 JSON of a key-value document."""
    if not isinstance(doc, dict) or not doc:
        raise InvalidInput("document must be a non-empty mapping")
    try:
        text = json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False, allow_nan=False)
    except (TypeError, ValueError) as exc:
        raise InvalidInput(f"document is not canonically serializable: {exc}") from None
    return text.encode("utf-8")


def reflow_identity(doc) -> PointG1:
    return hash_to_point_g1(canonicalize(doc))
