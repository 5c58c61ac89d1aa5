from ._envelopes import *  # noqa: F401,F403
from ._envelopes import (
    ConsistencyError,
    DomainError,
    Error,
    InvalidArgument,
    ParseError,
    UnboundConstant,
)

__all__ = [name for name in dir() if not name.startswith("_")]
