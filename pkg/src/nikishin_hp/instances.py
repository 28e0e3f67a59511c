"""Reference instances used by the examples, the tests and the CLI."""

from fractions import Fraction

from .exact import Polynomial
from .hp_system import Perturbation, build_instance
from .nikishin import DiscreteMeasure, NikishinGenerator


def canonical_generator(atoms=24):
    """Two uniform discrete measures: on ``[-1, 1]`` and on ``[2, 3]``.

    ``σ_1`` has atoms ``(2i - 25)/26`` and ``σ_2`` atoms ``2 + i/25``
    (``i = 1..24``), each with mass ``1/24``.
    """
    w = Fraction(1, atoms)
    s1 = DiscreteMeasure([(Fraction(2 * i - (atoms + 1), atoms + 2), w) for i in range(1, atoms + 1)])
    s2 = DiscreteMeasure([(2 + Fraction(i, atoms + 1), w) for i in range(1, atoms + 1)])
    return NikishinGenerator([s1, s2], [(-1, 1), (2, 3)])


def canonical_perturbations():
    """``r_1 = 1/(z - 5)`` and ``r_2 = 0``, so ``T = z - 5``."""
    return (Perturbation(Polynomial([1]), Polynomial([-5, 1])), Perturbation.zero())


def canonical_instance(n):
    return build_instance(canonical_generator(), canonical_perturbations(), n)


def canonical_config(n_min=2, n_max=22):
    """The canonical instance as a JSON-ready experiment configuration."""
    return {
        "generator": canonical_generator().to_json(),
        "perturbations": [p.to_json() for p in canonical_perturbations()],
        "n_min": n_min,
        "n_max": n_max,
        "grid": "default",
        "precision": "1/1000000000000",
    }


def recovery_generator(atoms=6):
    """One measure with ``atoms`` equal masses on ``[0, 1]``; exact recovery at ``n = atoms``."""
    w = Fraction(1, atoms)
    mu = DiscreteMeasure([(Fraction(i, atoms + 1), w) for i in range(1, atoms + 1)])
    return NikishinGenerator([mu], [(0, 1)])
