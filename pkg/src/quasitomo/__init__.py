"""Exact discrete tomography on planar cyclotomic model sets."""

from __future__ import annotations

from .cyclo import (CyclotomicRational, RealSubfieldElement, cyclo_inv, cyclo_mul, embed_complex,
                    field_norm_real, galois_apply, real_decompose)
from .modelset import (ModelSetSpec, Membership, NonGenericConfiguration, NotFound, embed_homothety,
                       generate, preset, pv_search, star_map, weyl_mean, window_contains)
from .pointset import FinitePointSet
from .polygons import (DeterminationCertificate, PolygonInPlane, affine_regular_witness,
                       affinely_regular_exists, build_u_polygon_3, certify_convex_determination,
                       cross_ratio, is_u_polygon, u_polygon_switch_sets)
from .successive import SecondDirectionResult, bounded_second_direction, second_direction
from .valuation import (QuadrupleIndex, classify_cross_ratio, enumerate_rational_f, eval_f, n2_member,
                        two_prime_criterion, vp_one_minus_zeta, vp_rational)
from .xray import Direction, XRaySnapshot, grid, is_unimodular_pair, line_key, switching_pair, xray

__all__ = [name for name in dir() if not name.startswith("_")]
