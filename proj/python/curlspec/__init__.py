"""Exact curl spectra on flat tori, round spheres, and spherical space forms."""

try:
    from curlspec._core import *  # noqa: F401,F403  (installed package layout)
except ImportError:  # in-tree build: extension module sits on PYTHONPATH
    from _core import *  # noqa: F401,F403
