class ElasticHullError(Exception):
    """Base class for all errors raised by this package."""


class OutOfBounds(ElasticHullError):
    pass


class EmptyInput(ElasticHullError):
    pass


class MarginTooLarge(ElasticHullError):
    pass


class TooFewParticles(ElasticHullError):
    pass


class NotConverged(ElasticHullError):
    pass


class InvalidParams(ElasticHullError):
    pass


class ParseError(ElasticHullError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
