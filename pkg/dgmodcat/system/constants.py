FORMAT_VERSION = "1.0"
RATIONAL_FIELD_DESCRIPTOR = "Q"
PRIME_FIELD_PREFIX = "Fp:"

EXIT_OK = 0
EXIT_MATHEMATICAL_FAILURE = 1
EXIT_INPUT_ERROR = 2

DEFAULT_DEGREE_BOUND = 4
DEFAULT_LENGTH_BOUND = 6
DEFAULT_HOMOLOGY_DEGREES = (-2, -1, 0, 1, 2)
