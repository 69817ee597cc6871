# msldpc_core/record.py
from dataclasses import dataclass, field
from typing import Any, Dict, Tuple
import json

from msldpc_core.polyring import BinaryPolynomial


@dataclass(frozen=True)
class CodeRecord:
    """
    One search hit: a cyclic code defined by the idempotent u(x).
    Serializable; polynomials travel as canonical text (u, g in x, theta in z).
    """
    n: int                           # code length (odd)
    k: int                           # dimension = number of unity roots of u
    subset: Tuple[int, ...]          # 1-based factor indices, sorted
    u: BinaryPolynomial              # idempotent in x; its cyclic shifts are the columns of H
    theta: BinaryPolynomial          # its spectrum in z; nonzero coefficients mark the roots of g
    g: BinaryPolynomial              # generator (x^n + 1) / gcd(u, x^n + 1)
    bch_bound: int
    r_theta: int                     # longest cyclic run of nonzero theta coefficients
    orthogonal: bool
    meta: Dict[str, Any] = field(default_factory=dict, compare=False, hash=False)
    # compare=False keeps meta out of ==, so the same code found by two runs
    # with different provenance still compares equal.

    @property
    def weight(self) -> int:
        return self.u.weight

    @property
    def rate(self) -> float:
        return self.k / self.n

    @property
    def dedup_key(self) -> str:
        """Codes are identified by their generator polynomial."""
        return self.g.to_text("x")

    def sort_key(self) -> Tuple[int, int, Tuple[int, ...]]:
        return (self.weight, self.n - self.k, self.subset)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "k": self.k,
            "subset": list(self.subset),
            "u": self.u.to_text("x"),
            "theta": self.theta.to_text("z"),
            "g": self.g.to_text("x"),
            "weight": self.weight,
            "bch_bound": self.bch_bound,
            "r_theta": self.r_theta,
            "orthogonal": self.orthogonal,
            "dedup_key": self.dedup_key,
            "meta": dict(self.meta),
        }

    def to_json(self) -> str:
        """Stable JSON (sorted keys), one line."""
        # sort_keys=True: the same record always serializes to the same string.
        return json.dumps(self.to_dict(), ensure_ascii=False, sort_keys=True)

    @staticmethod
    def from_dict(data: Dict[str, Any]) -> "CodeRecord":
        return CodeRecord(
            n=int(data["n"]),
            k=int(data["k"]),
            subset=tuple(int(i) for i in data.get("subset", ())),
            u=BinaryPolynomial.from_text(data["u"]),
            theta=BinaryPolynomial.from_text(data["theta"]),
            g=BinaryPolynomial.from_text(data["g"]),
            bch_bound=int(data["bch_bound"]),
            r_theta=int(data.get("r_theta", int(data["bch_bound"]) - 1)),
            orthogonal=bool(data.get("orthogonal", False)),
            meta=dict(data.get("meta", {})),
        )

    @staticmethod
    def from_json(payload: str) -> "CodeRecord":
        return CodeRecord.from_dict(json.loads(payload))

    def __repr__(self):
        return (f"CodeRecord(({self.n},{self.k}), subset={self.subset}, wt={self.weight}, "
                f"bch={self.bch_bound}, orthogonal={self.orthogonal}, g={self.dedup_key!r})")
