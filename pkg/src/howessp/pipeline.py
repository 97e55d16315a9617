"""End-to-end analysis of Howe tuples: canonical model, EQ(H), V_H and classes.

The per-record work is a plain function of picklable arguments so that it can
be handed to any pool with an order-preserving ``map``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from .canonical_model import canonical
from .elliptic_quotients import compute_EQ
from .field_tower import make_base_field, make_field
from .howe_search import HoweParams
from .isomorphism import IsoClassification, RamTuple, classify, compute_VH

__all__ = ["RecordAnalysis", "analyze_record", "analyze_all", "classify_params"]

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class RecordAnalysis:
    """What the classifier needs to know about one curve."""

    params: HoweParams
    eq_count: int
    eq_degree: int  # absolute degree of K_H over F_p
    vh_degree: int  # absolute degree of the field holding V_H
    tuples: tuple  # tuples of root codes in F_{p^vh_degree}

    def ram_tuples(self) -> list[RamTuple]:
        L = make_field(self.params.ctx.p, self.vh_degree)
        return [RamTuple(L, t) for t in self.tuples]

    def to_json(self) -> dict:
        L = make_field(self.params.ctx.p, self.vh_degree)
        return {
            "params": self.params.to_json(),
            "eq_count": self.eq_count,
            "eq_level": self.eq_degree // 2,
            "vh_level": self.vh_degree // 2,
            "vh": [[list(L.coeffs(c)) for c in t] for t in self.tuples],
        }


def _analyze_payload(job):
    p, data, seed = job
    params = HoweParams.from_json(make_base_field(p), data)
    model = canonical(params)
    eqs, K = compute_EQ(model.Q, model.P, seed=seed)
    V, L = compute_VH(model, eqs, seed=seed)
    return len(eqs), K.degree, L.degree, tuple(t.roots for t in V)


def analyze_record(params: HoweParams, seed: int = 0) -> RecordAnalysis:
    n, kd, ld, tuples = _analyze_payload((params.ctx.p, params.to_json(), seed))
    return RecordAnalysis(params, n, kd, ld, tuples)


def analyze_all(records: list[HoweParams], seed: int = 0, pool=None) -> list[RecordAnalysis]:
    jobs = [(hp.ctx.p, hp.to_json(), seed) for hp in records]
    mapper = pool.map if pool is not None else map
    results = list(mapper(_analyze_payload, jobs))
    return [RecordAnalysis(hp, *res) for hp, res in zip(records, results)]


def classify_params(
    records: list[HoweParams], seed: int = 0, pool=None
) -> tuple[IsoClassification, list[RecordAnalysis]]:
    analyses = analyze_all(records, seed, pool)
    levels = sorted({(a.eq_degree, a.vh_degree) for a in analyses})
    if any(d != 2 for pair in levels for d in pair):
        log.info("field degrees (K_H, V_H) observed beyond F_{p^2}: %s", levels)
    return classify([a.ram_tuples() for a in analyses]), analyses
