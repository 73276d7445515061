"""Spectral workbench.

Exhaustive verification of dense-subring and spectral-topology claims on
finite commutative rings and finite posets, with counterexample hunters
for the questions the theory leaves open.
"""

__version__ = "0.1.0"
__author__ = "Spectral Workbench Contributors"
__license__ = "MIT"

from spectral_workbench.claims import CATALOG, CLAIM_IDS, ClaimInstance, check_claim
from spectral_workbench.config import Config, Limits, load_config
from spectral_workbench.core import AuditEngine, AuditReport, run_audit
from spectral_workbench.corpus import CorpusSpec, build_corpus
from spectral_workbench.rings import FiniteRing, SubringPair, make_product, make_zn

__all__ = [
    "CATALOG",
    "CLAIM_IDS",
    "ClaimInstance",
    "check_claim",
    "Config",
    "Limits",
    "load_config",
    "AuditEngine",
    "AuditReport",
    "run_audit",
    "CorpusSpec",
    "build_corpus",
    "FiniteRing",
    "SubringPair",
    "make_product",
    "make_zn",
    "__version__",
]
