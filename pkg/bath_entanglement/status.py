"""
Process exit statuses of the command line interface.

0 - success, 2 - invalid configuration (bad arguments, bad bath.json,
dimension errors), 3 - numerical failure (quadrature, eigensolver,
non-Hermitian input).
"""


def is_numerical_error(code):
    return code == EXIT_3_NUMERICAL_FAILURE


EXIT_0_OK = 0
EXIT_1_FAILURE = 1
EXIT_2_INVALID_CONFIG = 2
EXIT_3_NUMERICAL_FAILURE = 3
