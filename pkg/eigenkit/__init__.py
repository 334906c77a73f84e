"""**eigenkit** is a Python library and command-line tool for checking, in
exact arithmetic, identities about eigenfunctions of the Laplace-Beltrami and
conformality operators: the binomial determinant identities behind the
:math:`L^2` relations, eigenfamilies on round spheres and flat tori, and their
cone correspondence.

"""
# For debugging purposes
__test_version__ = "0.0.0a0"
# Version of package
__version__ = "0.1.0a0.dev1"
