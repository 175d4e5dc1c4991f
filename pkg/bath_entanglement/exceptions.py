from .status import (
    EXIT_1_FAILURE,
    EXIT_2_INVALID_CONFIG,
    EXIT_3_NUMERICAL_FAILURE,
)


def _as_messages(messages):
    if messages and isinstance(messages, (list, tuple)):
        return [str(item) for item in messages]
    elif isinstance(messages, str):
        return [messages]
    return []


class BathEntanglementError(Exception):
    exit_status = EXIT_1_FAILURE


class ConfigError(BathEntanglementError):
    exit_status = EXIT_2_INVALID_CONFIG

    def __init__(self, messages=None):
        self.messages = _as_messages(messages)
        super().__init__('; '.join(self.messages))


class DimensionMismatch(ConfigError):
    # matrix / spectrum / bipartite dims do not agree
    pass


class NotNormalized(ConfigError):
    # pure state amplitudes are not unit norm
    pass


class InvalidState(ConfigError):
    # density matrix violates Hermiticity, trace or positivity
    pass


class InvalidMode(ConfigError):
    # cavity mode with vanishing transverse wave number
    pass


class CapTooLarge(ConfigError):
    # mode enumeration would exceed MODE_BUDGET
    pass


class BathConfigError(ConfigError):
    # bath.json structure is not valid
    pass


class NumericalFailure(BathEntanglementError):
    exit_status = EXIT_3_NUMERICAL_FAILURE


class NonHermitianInput(NumericalFailure):
    pass


class QuadratureFailure(NumericalFailure):
    pass


class ConvergenceFailure(NumericalFailure):
    # Jacobi sweeps exhausted before the off-diagonal norm vanished
    pass


class FieldError(BathEntanglementError):
    # base JSONField exception
    exit_status = EXIT_2_INVALID_CONFIG


class FieldTypeError(FieldError):
    # JSONField exception, field_type is not supported
    pass


class FieldValueError(FieldError):
    # JSONField exception, bad constructor arguments
    pass
