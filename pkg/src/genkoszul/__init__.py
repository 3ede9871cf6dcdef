"""Koszul cubes, generalized Koszul complexes and resolutions of weight-two modules."""

from .ring import PolyRing, Polynomial, associate_power, exact_div
from .matrix import RingMatrix, determinant, minors_ideal
from .gb import (FPModule, IdealBasis, SubmoduleBasis, fp_iso_check, grade, is_A_sequence,
                 is_regular_sequence, radical_membership, syzygies)
from .cube import Cube, face, h0_iterated, is_admissible, validate
from .complex import ChainComplex, MultiComplex, from_cube, homology, is_spherical, tot, tot_of_cube
from .koszul import (BoundaryFamily, be_check, classical_koszul, generalized_koszul, resolcriterion_check,
                     validate_koszul_cube)
from .wt2 import CannotCertify, WeightInput, build_wt2_cube, resolve_wt2, wt_membership

__version__ = "0.1.0"
