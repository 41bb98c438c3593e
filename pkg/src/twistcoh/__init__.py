"""Exact-arithmetic twisted de Rham cohomology for hyperelliptic curves
and the algebraic torus, with logarithmic forms, residues and two-term
hypercohomology."""

from .cohomology import (CohomologyReport, TruncationWindow,
                         gauge_invariance_check, gauge_transform,
                         twisted_cohomology, verify_chain_map)
from .curvering import (CurveSpec, Form1, TorusRing, d, dlog, is_unit,
                        make_curve, twisted_d)
from .errors import (DegenerationViolated, IncompatibleRing, NonSmooth,
                     NotAUnit, NotClosed, NotStabilized, ParseError,
                     ShapeMismatch, TwistcohError, ValidationError)
from .hyperspec import (HyperReport, TwoTermPage, e2_term, hyper0,
                        hyper1_split, hyper1_total, hyper2, hyper_report,
                        load_page)
from .logforms import (Chart, LogForm, MPoly, d_log, is_pole_free,
                       log_as_twist, residue, residue_k, twist_as_log,
                       twisted_d_log, wedge)

__all__ = [n for n in dir() if not n.startswith("_")]
