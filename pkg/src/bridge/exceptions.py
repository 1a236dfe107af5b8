"""Bridge-specific exceptions."""

from typing import Optional


class BridgeError(Exception):
    """Base exception for remote simulator bridge operations."""

    pass


class BridgeConnectionError(BridgeError):
    """Exception raised when the endpoint cannot be reached or the stream ends."""

    pass


class HandshakeError(BridgeError):
    """Exception raised when the hello exchange fails or versions differ."""

    pass


class ProtocolError(BridgeError):
    """Exception raised for lines that are not valid protocol messages.

    Attributes:
        line: The offending raw line
    """

    def __init__(self, message: str, line: Optional[str] = None):
        super().__init__(message if line is None else f"{message}: {line!r}")
        self.line = line


class RemoteError(BridgeError):
    """Exception raised when the remote simulator answers with an error message.

    Attributes:
        code: Wire error code (stale_handle, bad_action, malformed, internal)
    """

    def __init__(self, code: str, message: str):
        super().__init__(f"[{code}] {message}")
        self.code = code


class StaleHandleError(RemoteError):
    """Exception raised when a released or unknown state handle is used."""

    def __init__(self, message: str):
        super().__init__("stale_handle", message)
