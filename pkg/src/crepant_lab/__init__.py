"""crepant_lab: projective crepant resolutions of Gorenstein abelian
quotient singularities -- counting formulas, existence criteria, and a
lattice-triangulation decision pipeline."""

__version__ = "0.1.0"
