"""Core entropy of postcritically-finite polynomials and Newton maps.

Exact rational circle combinatorics, Thurston's pair algorithm, Markov
entropy with certified brackets, Hubbard-forest models and continuity
verdicts.
"""
from .circle import Angle, AngleSet, SeparationVerdict, orbit, separation, tau
from .markov import EntropyValue, MarkovSystem, entropy, system_entropy
from .portrait import CriticalMarking, CriticalPortrait, Role, validate_portrait
from .thurston import thurston_entropy

__all__ = [
    "Angle", "AngleSet", "SeparationVerdict", "orbit", "separation", "tau",
    "EntropyValue", "MarkovSystem", "entropy", "system_entropy",
    "CriticalMarking", "CriticalPortrait", "Role", "validate_portrait",
    "thurston_entropy",
]
__version__ = "0.1.0"
