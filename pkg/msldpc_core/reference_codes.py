# msldpc_core/reference_codes.py
"""
Published example codes: (n, k), the defining polynomial u(x) exactly as
printed, the stated minimum distance and whether the parity checks are
orthogonal. Some printed supports are not closed under doubling mod n, so
consumers should measure rather than assume idempotency.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional
import json
import os

from msldpc_core.polyring import BinaryPolynomial

DATA_FILE = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "data", "reference_codes.json")


@dataclass(frozen=True)
class ReferenceCode:
    n: int
    k: int
    u: BinaryPolynomial
    dmin: int
    orthogonal: bool

    @property
    def label(self) -> str:
        return f"({self.n},{self.k})"


@lru_cache(maxsize=4)
def _load(path: str) -> tuple:
    with open(path, "r", encoding="utf-8") as f:
        rows = json.load(f)
    return tuple(
        ReferenceCode(
            n=int(r["n"]),
            k=int(r["k"]),
            u=BinaryPolynomial.from_text(r["u"]),
            dmin=int(r["dmin"]),
            orthogonal=bool(r["orthogonal"]),
        )
        for r in rows
    )


def load_reference_codes(path: Optional[str] = None) -> List[ReferenceCode]:
    return list(_load(path or DATA_FILE))


def find_reference(n: int, k: int, path: Optional[str] = None) -> ReferenceCode:
    for ref in load_reference_codes(path):
        if ref.n == n and ref.k == k:
            return ref
    raise KeyError(f"no reference code ({n},{k})")
