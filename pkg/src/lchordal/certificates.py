"""JSON certificates for every witness kind.

Every document carries ``"schema": "lchordal-certificate/1"`` and a ``kind``.
Vertex ids are 1-based, as in the PACE files.  Decompositions are embedded
as ``.td`` text.

kinds and their payload fields:

* ``hole``: ``cycle``
* ``tree_decomposition``: ``width``, ``td``
* ``block``: ``k``, ``vertices``, ``cuts`` (``[u, v, size]`` rows)
* ``subdivision``: ``m``, ``r``, ``branchvertices``, ``paths``
* ``kss``: ``s``, ``left``, ``right``
* ``witness_chain``: ``outcome`` in ``long_hole | small_treewidth | chain |
  partial_chain`` with nested certificates
* ``pack_or_cover``: ``outcome`` in ``packing | cover``
"""

from __future__ import annotations

import jsonschema

from .blocks import Block, is_k_block
from .chordality import Hole
from .erdos_posa import Cover, Packing, validate_result
from .graph import Graph, Violation
from .pace import FormatError, parse_td, write_td
from .treewidth import TreeDecomposition, validate_decomposition
from .witnesses import (
    Chain,
    KssWitness,
    LongHoleFound,
    PartialChain,
    SmallTreewidth,
    SubdivisionWitness,
    validate_artifact,
    validate_chain,
)

SCHEMA_ID = "lchordal-certificate/1"


class CertificateError(ValueError):
    """The document does not match the certificate schema."""


_ids = {"type": "array", "items": {"type": "integer", "minimum": 1}}
_count = {"type": "integer", "minimum": 0}

_PAYLOADS = {
    "hole": {"required": ["cycle"], "properties": {"cycle": _ids}},
    "tree_decomposition": {"required": ["width", "td"],
                           "properties": {"width": {"type": "integer"}, "td": {"type": "string"}}},
    "block": {"required": ["k", "vertices"],
              "properties": {"k": _count, "vertices": _ids,
                             "cuts": {"type": "array", "items": {"type": "array", "items": {"type": "integer"},
                                                                 "minItems": 3, "maxItems": 3}}}},
    "subdivision": {"required": ["m", "r", "branchvertices", "paths"],
                    "properties": {"m": _count, "r": _count, "branchvertices": _ids,
                                   "paths": {"type": "array", "items": _ids}}},
    "kss": {"required": ["s", "left", "right"], "properties": {"s": _count, "left": _ids, "right": _ids}},
    "witness_chain": {"required": ["outcome"],
                      "properties": {"outcome": {"enum": ["long_hole", "small_treewidth", "chain", "partial_chain"]}}},
    "pack_or_cover": {"required": ["outcome", "ell", "k"],
                      "properties": {"outcome": {"enum": ["packing", "cover"]}, "ell": _count, "k": _count}},
}

SCHEMA = {
    "type": "object",
    "required": ["schema", "kind"],
    "properties": {"schema": {"const": SCHEMA_ID}, "kind": {"enum": sorted(_PAYLOADS)}},
    "allOf": [
        {"if": {"properties": {"kind": {"const": kind}}},
         "then": {"required": body["required"], "properties": body["properties"]}}
        for kind, body in _PAYLOADS.items()
    ],
}


def _one(vs) -> list:
    return [v + 1 for v in vs]


def _zero(vs) -> list:
    return [v - 1 for v in vs]


def _doc(kind: str, **fields) -> dict:
    return {"schema": SCHEMA_ID, "kind": kind, **fields}


def to_json(obj, g: Graph | None = None) -> dict:
    """Certificate document for a witness.  ``g`` is needed for decompositions
    (vertex count) and fills in the pairwise-cut table of blocks."""
    if isinstance(obj, Hole):
        return _doc("hole", cycle=_one(obj.cycle), length=obj.length)
    if isinstance(obj, TreeDecomposition):
        if g is None:
            raise ValueError("the graph is needed to write a decomposition")
        return _doc("tree_decomposition", width=obj.width, td=write_td(obj, g.n))
    if isinstance(obj, Block):
        doc = _doc("block", k=obj.k, vertices=_one(sorted(obj.vertices)))
        if g is not None:
            _, cert = is_k_block(g, obj.vertices, obj.k)
            doc["cuts"] = [[u + 1, v + 1, c] for (u, v), c in sorted(cert.cuts.items())]
        return doc
    if isinstance(obj, SubdivisionWitness):
        paths = [_one(obj.paths[p]) for p in sorted(obj.paths)]
        return _doc("subdivision", m=obj.m, r=obj.r, branchvertices=_one(sorted(obj.branchvertices)), paths=paths)
    if isinstance(obj, KssWitness):
        return _doc("kss", s=obj.s, left=_one(sorted(obj.left)), right=_one(sorted(obj.right)))
    if isinstance(obj, LongHoleFound):
        return _doc("witness_chain", outcome="long_hole", hole=to_json(obj.hole))
    if isinstance(obj, SmallTreewidth):
        return _doc("witness_chain", outcome="small_treewidth", width=obj.width, threshold=obj.threshold,
                    decomposition=to_json(obj.decomposition, g))
    if isinstance(obj, Chain):
        return _doc("witness_chain", outcome="chain", width=obj.width, block=to_json(obj.block, g),
                    subdivision=to_json(obj.subdivision), kss=to_json(obj.kss),
                    preconditions=_plain(obj.preconditions))
    if isinstance(obj, PartialChain):
        arts = {name: to_json(a, g) for name, a in obj.artifacts.items()}
        return _doc("witness_chain", outcome="partial_chain", stage=obj.stage, note=obj.note,
                    budget_exceeded=obj.budget_exceeded, artifacts=arts,
                    preconditions=_plain(obj.preconditions))
    if isinstance(obj, Packing):
        return _doc("pack_or_cover", outcome="packing", ell=obj.ell, k=obj.k,
                    holes=[_one(h.cycle) for h in obj.holes])
    if isinstance(obj, Cover):
        return _doc("pack_or_cover", outcome="cover", ell=obj.ell, k=obj.k,
                    cover=_one(sorted(obj.vertices)), nodes=_one(obj.nodes), bound=obj.bound,
                    holes_seen=obj.holes_seen, complete=obj.complete,
                    decomposition=to_json(obj.decomposition, g))
    raise TypeError(f"no certificate format for {type(obj).__name__}")


def _plain(d: dict) -> dict:
    return {k: (v if isinstance(v, (bool, int, str)) or v is None else str(v)) for k, v in d.items()}


def check_schema(doc) -> None:
    try:
        jsonschema.validate(doc, SCHEMA)
    except jsonschema.ValidationError as exc:
        raise CertificateError(exc.message) from None


def from_json(doc: dict):
    """Rebuild the witness object described by ``doc``."""
    check_schema(doc)
    kind = doc["kind"]
    try:
        if kind == "hole":
            return Hole(tuple(_zero(doc["cycle"])))
        if kind == "tree_decomposition":
            td, _ = parse_td(doc["td"])
            return TreeDecomposition(td.bags, td.tree_edges, doc["width"])
        if kind == "block":
            return Block(frozenset(_zero(doc["vertices"])), doc["k"])
        if kind == "subdivision":
            paths = {}
            for p in doc["paths"]:
                p = tuple(_zero(p))
                if p and p[0] > p[-1]:
                    p = p[::-1]
                key = (p[0], p[-1]) if p else ()
                if key in paths:
                    raise CertificateError(f"two paths given for pair {_one(key)}")
                paths[key] = p
            return SubdivisionWitness(doc["m"], frozenset(_zero(doc["branchvertices"])), paths, doc["r"])
        if kind == "kss":
            return KssWitness(doc["s"], frozenset(_zero(doc["left"])), frozenset(_zero(doc["right"])))
        if kind == "witness_chain":
            return _chain_from_json(doc)
        if kind == "pack_or_cover":
            if doc["outcome"] == "packing":
                return Packing(tuple(Hole(tuple(_zero(h))) for h in doc["holes"]), doc["ell"], doc["k"])
            td = from_json(doc["decomposition"])
            return Cover(frozenset(_zero(doc["cover"])), tuple(_zero(doc["nodes"])), td, doc["ell"], doc["k"],
                         doc.get("holes_seen", 0), doc.get("complete", True))
    except (KeyError, TypeError, IndexError) as exc:
        raise CertificateError(f"malformed {kind} certificate: {exc}") from None
    except FormatError as exc:
        raise CertificateError(f"embedded decomposition: {exc}") from None
    raise CertificateError(f"unknown kind {kind}")


def _chain_from_json(doc: dict):
    out = doc["outcome"]
    if out == "long_hole":
        return LongHoleFound(from_json(doc["hole"]))
    if out == "small_treewidth":
        return SmallTreewidth(doc["width"], from_json(doc["decomposition"]), doc.get("threshold", 0))
    if out == "chain":
        return Chain(doc["width"], from_json(doc["block"]), from_json(doc["subdivision"]), from_json(doc["kss"]),
                     doc.get("preconditions", {}))
    arts = {name: from_json(a) for name, a in doc.get("artifacts", {}).items()}
    return PartialChain(doc["stage"], arts, doc.get("note", ""), doc.get("budget_exceeded", False),
                        doc.get("preconditions", {}))


def validate_certificate(g: Graph, doc: dict) -> Violation | None:
    """Schema check, then semantic check of the witness against ``g``.

    Violation messages use internal 0-based ids; the witness tuple is
    translated back to the 1-based ids of the files and appended."""
    bad = _semantic_check(g, from_json(doc))
    if bad is None or not bad.witness:
        return bad
    ids = tuple(v + 1 for v in bad.witness)
    return Violation(f"{bad.message} (file ids: {' '.join(map(str, ids))})", ids)


def _semantic_check(g: Graph, obj) -> Violation | None:
    if isinstance(obj, (LongHoleFound, SmallTreewidth, Chain, PartialChain)):
        return validate_chain(g, obj)
    if isinstance(obj, (Packing, Cover)):
        return validate_result(g, obj)
    if isinstance(obj, TreeDecomposition):
        return validate_decomposition(g, obj)
    if isinstance(obj, Block):
        ok, cert = is_k_block(g, obj.vertices, obj.k)
        return None if ok else Violation(cert.reason)
    return validate_artifact(g, obj)
