"""Amalgams ``(A * B; H = K, phi)`` with normal amalgamated subgroups."""

from ..specfile import AmalgamSpec, bs_amalgam
from .group import AmalgamGroup, AmalgamHypothesisError, ReducedSequence, build_amalgam
from .search import (Case2Data, Decision, SearchLimits, case2_data, decide_membership,
                     intersect_U_H, separate_amalgam)


def reduce(G: AmalgamGroup, w):
    return G.reduce(w)


def project_mod_H(G: AmalgamGroup) -> AmalgamGroup:
    return G.project_mod_H()


__all__ = ["AmalgamGroup", "AmalgamHypothesisError", "AmalgamSpec", "Case2Data", "Decision",
           "ReducedSequence", "SearchLimits", "bs_amalgam", "build_amalgam", "case2_data",
           "decide_membership", "intersect_U_H", "project_mod_H", "reduce", "separate_amalgam"]
