"""Hyperelliptic curves of genus 2 and 3 from theta constants and Jacobian Nullwerte."""
from .algebra import INF
from .igusa import (IgusaClebschTuple, SymmetricCoefficients2, igusa_from_roots_oracle, igusa_from_symmetric,
                    symmetric_from_igusa)
from .identities import IdentityReport, run_suite
from .periods import CharacteristicDictionary, PeriodData, characteristic_dictionary, period_matrix
from .reconstruct import (genus2_discriminant_from_Z, genus2_roots_from_thetanullwerte, genus2_symmetric_from_Z,
                          genus3_label, genus3_symmetric_from_Z)
from .symcurve import BranchSet, SymmetricModel, mu_multiset, symmetric_model
from .theta import Characteristic, RiemannMatrix, ThetaTable, even_characteristics, odd_characteristics

__version__ = "0.1.0"

__all__ = [
    "INF", "IgusaClebschTuple", "SymmetricCoefficients2", "igusa_from_roots_oracle", "igusa_from_symmetric",
    "symmetric_from_igusa", "IdentityReport", "run_suite", "CharacteristicDictionary", "PeriodData",
    "characteristic_dictionary", "period_matrix", "genus2_discriminant_from_Z", "genus2_roots_from_thetanullwerte",
    "genus2_symmetric_from_Z", "genus3_label", "genus3_symmetric_from_Z", "BranchSet", "SymmetricModel",
    "mu_multiset", "symmetric_model", "Characteristic", "RiemannMatrix", "ThetaTable", "even_characteristics",
    "odd_characteristics",
]
