"""JSON encodings.

complex scalar ``[re, im]``; vector: list of scalars; operator: row-major
list of rows; ProductState ``{"dims", "phase", "factors"}``; Subspace
``{"ambient", "columns"}``; basis ``{"dims", "members"}``.
"""

import json

import numpy as np

from .bases import BasisBlockDecomposition, QubitBlock, UnentangledBasis
from .frames import BornOracle, CounterexampleOracle, ProductFrameOracle, QubitFrameFn
from .subspaces import EntangledSubspaceCert, vandermonde_subspace
from .tensor_core import ProductState, Subspace

RNG_NAME = "numpy.random.default_rng (PCG64)"


def enc_complex(z):
    z = complex(z)
    return [z.real, z.imag]


def dec_complex(v):
    return complex(v[0], v[1])


def enc_vector(v):
    return [enc_complex(z) for z in np.asarray(v).reshape(-1)]


def dec_vector(v):
    return np.array([dec_complex(z) for z in v], dtype=np.complex128)


def enc_operator(m):
    return [enc_vector(row) for row in np.asarray(m)]


def dec_operator(rows):
    return np.array([dec_vector(r) for r in rows], dtype=np.complex128).reshape(len(rows), -1)


def enc_state(p):
    return {"dims": list(p.dims), "phase": enc_complex(p.phase), "factors": [enc_vector(f) for f in p.factors]}


def dec_state(d):
    p = ProductState([dec_vector(f) for f in d["factors"]], dec_complex(d.get("phase", [1.0, 0.0])))
    if list(p.dims) != list(d["dims"]):
        raise ValueError("product state dims do not match its factors")
    return p


def enc_subspace(s):
    return {"ambient": s.ambient_dim, "columns": [enc_vector(c) for c in s.columns.T]}


def dec_subspace(d):
    cols = [dec_vector(c) for c in d["columns"]]
    arr = np.column_stack(cols) if cols else np.zeros((d["ambient"], 0))
    return Subspace(arr, d["ambient"])


def enc_basis(b):
    return {"type": "basis", "dims": list(b.dims), "members": [enc_state(p) for p in b.members]}


def dec_basis(d):
    return UnentangledBasis(tuple(d["dims"]), [dec_state(m) for m in d["members"]])


def enc_decomposition(dec):
    return {
        "type": "decomposition",
        "partition": list(dec.partition),
        "blocks": [
            {"a": enc_vector(b.a), "hat_a": enc_vector(b.hat_a),
             "b": [enc_vector(v) for v in b.b_list], "c": [enc_vector(v) for v in b.c_list],
             "U": enc_subspace(b.subspace), "b_members": b.b_members, "c_members": b.c_members}
            for b in dec.blocks
        ],
    }


def dec_decomposition(d):
    blocks = [
        QubitBlock(dec_vector(b["a"]), dec_vector(b["hat_a"]),
                   [dec_vector(v) for v in b["b"]], [dec_vector(v) for v in b["c"]],
                   dec_subspace(b["U"]), list(b["b_members"]), list(b["c_members"]))
        for b in d["blocks"]
    ]
    return BasisBlockDecomposition(list(d["partition"]), blocks)


def enc_cert(c):
    return {"type": "entangled_subspace", "dims": list(c.dims), "subspace": enc_subspace(c.subspace),
            "construction": c.construction, "certificate": c.certificate}


def dec_cert(d):
    cons = d["construction"]
    if cons.get("method") == "vandermonde":
        # replay the construction, then check it against the stored columns
        cert = vandermonde_subspace(tuple(d["dims"]), cons["points"])
        stored = dec_subspace(d["subspace"])
        if np.linalg.norm(cert.subspace.projector() - stored.projector(), 2) > 1e-8:
            raise ValueError("stored subspace does not match its construction")
        return cert
    return EntangledSubspaceCert(tuple(d["dims"]), dec_subspace(d["subspace"]), cons, d["certificate"])


def enc_oracle(o):
    desc = o.descriptor()
    if desc["kind"] == "born":
        desc = dict(desc, T=enc_operator(desc["T"]))
    elif desc["kind"] == "qubit_product":
        desc = dict(desc, h=enc_oracle(o.h))
    return desc


def dec_oracle(d):
    kind = d["kind"]
    if kind == "born":
        return BornOracle(dec_operator(d["T"]), tuple(d["dims"]))
    if kind == "qubit_product":
        g = d["g"]
        return ProductFrameOracle(
            QubitFrameFn(g["weight"], (g["odd_part"]["name"], g["odd_part"]["coef"])), dec_oracle(d["h"]))
    if kind == "counterexample":
        return CounterexampleOracle(tuple(d["dims"]), d["weight"], seed=d.get("seed"))
    raise ValueError(f"unknown oracle kind {kind!r}")


def to_jsonable(obj):
    """Recursively encode library objects and numpy values."""
    if isinstance(obj, ProductState):
        return enc_state(obj)
    if isinstance(obj, Subspace):
        return enc_subspace(obj)
    if isinstance(obj, UnentangledBasis):
        return enc_basis(obj)
    if isinstance(obj, BasisBlockDecomposition):
        return enc_decomposition(obj)
    if isinstance(obj, EntangledSubspaceCert):
        return enc_cert(obj)
    if isinstance(obj, dict):
        return {k: to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        if obj.ndim == 2:
            return enc_operator(obj)
        if np.iscomplexobj(obj):
            return enc_vector(obj)
        return obj.tolist()
    if isinstance(obj, (complex, np.complexfloating)):
        return enc_complex(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    return obj


def dumps(obj):
    # repr-based floats are the shortest round-trip form
    return json.dumps(to_jsonable(obj), indent=1) + "\n"


def load_artifact(d):
    """Decode a JSON artifact by its ``type``/``kind`` tag."""
    if "kind" in d:
        return dec_oracle(d)
    t = d.get("type")
    if t == "basis":
        return dec_basis(d)
    if t == "decomposition":
        return dec_decomposition(d)
    if t == "entangled_subspace":
        return dec_cert(d)
    if t == "subspace" or ("ambient" in d and "columns" in d):
        return dec_subspace(d)
    raise ValueError("unrecognized artifact")
