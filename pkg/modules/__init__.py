"""
BiHom-algebra, coalgebra, module and Sweedler-dual constructions.
"""

from modules.algebra import FDBiHomAlgebra, AlgebraMorphism, IdealHandle, validate_algebra, yau_twist
from modules.coalgebra import FDBiHomCoalgebra, CoalgebraMorphism, validate_coalgebra
from modules.duality import SweedlerFunctional, dual_coalgebra, sweedler_delta
from modules.bihom_modules import FDBiHomModule, FDBiHomComodule, ModuleSweedlerFunctional, regular_module
from modules.poly_family import PolyBiHomAlgebra, CofiniteMonomialIdeal, DualFunctional
from modules.config_loader import get_config, Config

__all__ = [
    'FDBiHomAlgebra',
    'AlgebraMorphism',
    'IdealHandle',
    'validate_algebra',
    'yau_twist',
    'FDBiHomCoalgebra',
    'CoalgebraMorphism',
    'validate_coalgebra',
    'SweedlerFunctional',
    'dual_coalgebra',
    'sweedler_delta',
    'FDBiHomModule',
    'FDBiHomComodule',
    'ModuleSweedlerFunctional',
    'regular_module',
    'PolyBiHomAlgebra',
    'CofiniteMonomialIdeal',
    'DualFunctional',
    'get_config',
    'Config'
]
