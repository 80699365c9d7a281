# Exceptions raised by hkntk
# Author: hkntk developers


class HKError(Exception):
    """Base class of all hkntk errors."""


class ConfigError(HKError, ValueError):
    """
    @abstract      Run configuration does not match the schema.
    @param path    Field path of the offending key, e.g. "clusters[1].size" [str]
    @param msg     What is wrong with it [str]
    """
    def __init__(self, path, msg):
        self.path = path
        self.msg = msg
        super().__init__("%s: %s" % (path, msg) if path else msg)

    def __reduce__(self):
        return (ConfigError, (self.path, self.msg))


class InitViolation(HKError, ValueError):
    """Divisive initial state or leader position violates its inequalities."""
    def __init__(self, violations):
        self.violations = list(violations)
        msg = "; ".join("[%s] %s" % (v.rule, v.message) for v in self.violations)
        super().__init__(msg)

    def __reduce__(self):
        return (InitViolation, (self.violations,))


class NonConvergenceError(HKError, RuntimeError):
    """The noise-free dynamics did not repeat a state within max_steps."""


class RunError(HKError, RuntimeError):
    """A worker failed while running one episode of a batch."""
    def __init__(self, run_index, msg):
        self.run_index = run_index
        self.msg = msg
        super().__init__("run %d failed: %s" % (run_index, msg))

    def __reduce__(self):
        return (RunError, (self.run_index, self.msg))
