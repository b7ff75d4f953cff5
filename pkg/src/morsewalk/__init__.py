"""Morse functions on closed orientable surfaces built by lattice random walks.

A walk in ``{(x, y) : x >= 1, y >= 0}`` starting at ``(1, 0)`` steps right,
left or up-and-left; each step attaches one critical point to a growing surface
with ``x`` boundary circles and genus ``y``.
"""

from .distributions import (expected_cobordism, expected_critical_points, expected_genus,
                            expected_index_one, expected_local_maxima, monte_carlo_moments,
                            p_length, p_length_genus)
from .domset import (alon_spencer_bound, exact_min_dominating_set, greedy_dominating_set,
                     probabilistic_dominating_set, verify_dominating)
from .enumeration import catalan, count_walks_length, delta, enumerate_walks, m_number
from .lattice_walk import (Censored, Completed, CompletedWalk, Point, Step, StepProbabilities,
                           apply_step, in_domain, simulate, simulate_batch, step_counts, walk_probability)
from .morse_skeleton import CriticalEvent, MorseSkeleton, boundary_profile, invariants_of, skeleton_from_walk
from .render import render_walks
from .walkgraph import WalkGraph, build_graph, degree_report, shared_points

__version__ = "0.1.0"
