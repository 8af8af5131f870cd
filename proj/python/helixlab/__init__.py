"""Numerical toolkit for constant-angle submanifold geometry.

Thin re-export of the compiled extension; see the project README for the
catalog names, curve fixtures and theorem identifiers.
"""

try:  # installed wheel layout: extension lives inside the package
    from . import _helixlab as _impl
except ImportError:  # development layout: extension directory on PYTHONPATH
    import _helixlab as _impl

CatalogEntry = _impl.CatalogEntry
Curve = _impl.Curve
GeomError = _impl.GeomError
Patch = _impl.Patch
__version__ = _impl.__version__
catalog_get = _impl.catalog_get
catalog_names = _impl.catalog_names
estimate_helix_space = _impl.estimate_helix_space
integrate_geodesic = _impl.integrate_geodesic
is_helix_direction = _impl.is_helix_direction
make_curve = _impl.make_curve
parse_immersion = _impl.parse_immersion
verify = _impl.verify
verify_curve = _impl.verify_curve

__all__ = [
    "CatalogEntry",
    "Curve",
    "GeomError",
    "Patch",
    "__version__",
    "catalog_get",
    "catalog_names",
    "estimate_helix_space",
    "integrate_geodesic",
    "is_helix_direction",
    "make_curve",
    "parse_immersion",
    "verify",
    "verify_curve",
]
