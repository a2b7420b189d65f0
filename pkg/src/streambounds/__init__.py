"""Memory-metered graph streaming: processors, hard instances and protocol simulations."""
from .stream_core import (GraphStream, InvalidInput, Kind, ProtocolViolation, StreamError,
                          StreamParseError, StreamProcessor, StreamValidationError, Token,
                          Transcript, dumps_stream, loads_stream, read_stream, run_stream,
                          write_stream)

__version__ = "0.1.0"

__all__ = [
    "GraphStream", "InvalidInput", "Kind", "ProtocolViolation", "StreamError",
    "StreamParseError", "StreamProcessor", "StreamValidationError", "Token", "Transcript",
    "dumps_stream", "loads_stream", "read_stream", "run_stream", "write_stream",
]
