"""Global limits shared by every module."""

# exact arithmetic cost grows like n^3 per coefficient product
MAX_DIM = 16

# only quadratic extensions are automated
MAX_RAMIFICATION = 2

DEFAULT_TRUNC = 32

# relative number of terms used when an exact series must be expanded
# (e.g. the inverse of an exact polynomial)
DEFAULT_EXPANSION_TERMS = 32
