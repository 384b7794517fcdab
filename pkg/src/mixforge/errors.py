"""Exception hierarchy shared across the pipeline stages."""


class MixforgeError(Exception):
    """Base class for all pipeline errors."""


class InvalidUtf8Error(MixforgeError):
    """Input bytes (or a str with lone surrogates) are not valid UTF-8."""


class InvalidGrammarError(MixforgeError):
    """A formula grammar violates its invariants."""


class InvalidSpecError(MixforgeError):
    """A table spec violates its invariants."""


class EmptyLexiconError(MixforgeError):
    """Word insertion requested with an empty lexicon."""


class EmptyCorpusError(MixforgeError):
    """The real segment stream is empty but real tokens were requested."""


class OversizedSegmentError(MixforgeError):
    """An unsplittable segment exceeds the sample token budget."""

    def __init__(self, message, segment=None):
        super().__init__(message)
        self.segment = segment


class MissingFontCoverageError(MixforgeError):
    """No registered preamble covers one of the sample's languages."""


class CompilerMissingError(MixforgeError):
    """The LaTeX compiler executable is not on the search path."""


class CompileFailedError(MixforgeError):
    """Compilation exited nonzero; carries a log excerpt."""

    def __init__(self, message, log_excerpt=""):
        super().__init__(message)
        self.log_excerpt = log_excerpt


class MultiPageError(MixforgeError):
    """A compiled document spilled onto more than one page."""


class RasterToolMissingError(MixforgeError):
    """The PDF rasterizer executable is not on the search path."""


class PageEmptyError(MixforgeError):
    """Rasterization produced a page with no visible content."""


class WatermarkMissingError(MixforgeError):
    """The configured watermark image path does not exist."""


class CorpusTooSmallError(MixforgeError):
    """BPE training ran out of mergeable pairs before the vocab target."""


class IdOutOfRangeError(MixforgeError):
    """A token id passed to decode is outside the vocabulary."""


class MissingPredictionError(MixforgeError):
    """A manifest sample id has no entry in the predictions file."""

    def __init__(self, sample_id):
        super().__init__(f"no prediction for sample {sample_id!r}")
        self.sample_id = sample_id


class ConfigError(MixforgeError):
    """Pipeline configuration failed validation."""
