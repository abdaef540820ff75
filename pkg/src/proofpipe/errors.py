"""Exception taxonomy shared across the package."""

from __future__ import annotations


class ProofPipeError(Exception):
    """Base class for all package errors."""


# --- completion gateway ---

class RequestInvalidError(ProofPipeError):
    """The completion request violates its own invariants."""


class BackendUnreachableError(ProofPipeError):
    """Transient transport failure that persisted through all retries."""


class BackendRejectedError(ProofPipeError):
    """Non-retryable backend refusal (bad request, auth, unknown route)."""


class UnknownBackendError(ProofPipeError):
    """Request names a backend id that was never registered."""


# --- rubric grading ---

class MissingReferenceError(ProofPipeError):
    """Prompt variant needs a reference solution but none was supplied."""


class NoPointsTagError(ProofPipeError):
    """No parsable points tag anywhere in the grader output."""


class GradingFailedError(ProofPipeError):
    """Grading failed after the retry; wraps the underlying parse error."""


# --- grader benchmark ---

class TooFewSolutionsError(ProofPipeError):
    """A problem has fewer than two solutions; advantages are degenerate."""


class MisalignedBenchmarkError(ProofPipeError):
    """Candidate and reference reward sets disagree on problems or counts."""


class FailureBudgetExceededError(ProofPipeError):
    """More grading failures than the configured budget allows."""


# --- scaffolds ---

class ScaffoldConfigError(ProofPipeError):
    """Scaffold configuration violates a precondition."""


class ZeroBaselineError(ProofPipeError):
    """Token ratio requested against a zero-token baseline."""


# --- data pipeline ---

class MissingFenceError(ProofPipeError):
    """No fenced JSON block found in the filter model's reply."""


class MissingKeyError(ProofPipeError):
    """A required verdict key is absent."""

    def __init__(self, key: str):
        super().__init__(f"verdict is missing required key: {key!r}")
        self.key = key


class VerdictTypeError(ProofPipeError):
    """A verdict key carries a value of the wrong type."""


class DifficultyOutOfRangeError(ProofPipeError):
    """Verdict difficulty lies outside [1, 10]."""


class MissingVerdictError(ProofPipeError):
    """Record reached the verdict policy without a filter verdict."""


class UnannotatedRecordError(ProofPipeError):
    """Record reached prompt-set construction without a difficulty annotation."""


# --- cli runner ---

class ConfigInvalidError(ProofPipeError):
    """Run configuration failed to parse or validate."""


class StageFailedError(ProofPipeError):
    """A pipeline stage raised; the manifest records which one."""


class MissingArtifactsError(ProofPipeError):
    """Report emission requested but the run directory lacks artifacts."""


class RunLockedError(ProofPipeError):
    """Another process holds the run directory lock."""
