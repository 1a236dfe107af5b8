"""Client side of the remote simulator bridge.

A `BridgeSession` owns one byte stream to a simulator process. Requests
carry increasing ids; responses may arrive in any order and are matched by
id. `RemoteEnvironment` adapts a session to the planners' environment
contract, so the same planners run unchanged over a remote simulator.
"""

import logging
import shlex
import socket
import subprocess
from typing import Any, BinaryIO, Iterable, Optional, Sequence

from tenacity import (
    retry,
    retry_if_exception_type,
    stop_after_attempt,
    wait_exponential,
)

from ..environments.base import Environment
from ..models.action_space import Action
from ..models.environment import EnvironmentDescriptor, StepOutcome
from ..planning.exceptions import ContractViolationError
from . import protocol
from .exceptions import (
    BridgeConnectionError,
    HandshakeError,
    ProtocolError,
    RemoteError,
    StaleHandleError,
)
from .logging import log_call
from .protocol import ReleaseAck, StateHandle

logger = logging.getLogger(__name__)


def with_connect_retry(func):
    """
    Decorator for exponential backoff on refused connections.

    Retries up to 3 attempts; the simulator may still be starting up.

    Args:
        func: Function to wrap with retry logic

    Returns:
        Wrapped function with retry behavior
    """
    return retry(
        stop=stop_after_attempt(3),
        wait=wait_exponential(multiplier=0.1, min=0.1, max=1),
        retry=retry_if_exception_type(ConnectionRefusedError),
        reraise=True,
    )(func)


class BridgeSession:
    """One NDJSON conversation with a simulator.

    Attributes:
        descriptor: Environment descriptor announced in the hello reply
    """

    def __init__(
        self,
        reader: BinaryIO,
        writer: BinaryIO,
        sock: Optional[socket.socket] = None,
        process: Optional[subprocess.Popen] = None,
    ):
        self._reader = reader
        self._writer = writer
        self._sock = sock
        self._process = process
        self._next_id = 0
        self._outstanding: set[int] = set()
        self._pending: dict[int, dict] = {}
        self.descriptor: Optional[EnvironmentDescriptor] = None

    @classmethod
    def from_socket(cls, sock: socket.socket) -> "BridgeSession":
        return cls(sock.makefile("rb"), sock.makefile("wb"), sock=sock)

    def __enter__(self) -> "BridgeSession":
        return self

    def __exit__(self, *exc) -> None:
        self.close()

    def handshake(self) -> EnvironmentDescriptor:
        """Exchange hello messages and read the environment descriptor.

        Raises:
            ProtocolError: If the reply line is not a protocol message
            HandshakeError: If the reply is not a hello, the version differs,
                or the descriptor is missing or invalid
        """
        self._send(protocol.hello())
        reply = self._read_message()

        if reply.get("type") != "hello":
            raise HandshakeError(f"Expected hello, got {reply.get('type')!r}")
        version = reply.get("protocol_version")
        if version != protocol.PROTOCOL_VERSION:
            raise HandshakeError(
                f"Protocol version mismatch: client {protocol.PROTOCOL_VERSION}, "
                f"server {version}"
            )
        try:
            self.descriptor = EnvironmentDescriptor.from_dict(reply["descriptor"])
        except (KeyError, TypeError, ValueError) as e:
            raise HandshakeError(f"Invalid environment descriptor: {e}") from e

        logger.info(f"Connected to remote environment {self.descriptor.name}")
        return self.descriptor

    def request(self, message: dict) -> dict:
        """Send one request and wait for its response."""
        return self.request_many([message])[0]

    def request_many(self, messages: Sequence[dict]) -> list[dict]:
        """Pipeline several requests, then collect their responses in order.

        Raises:
            StaleHandleError: If the simulator reports an unknown handle
            RemoteError: If the simulator reports any other error
        """
        ids = []
        for message in messages:
            ids.append(self._next_id)
            self._outstanding.add(self._next_id)
            self._send({**message, "id": self._next_id})
            self._next_id += 1
        self._writer.flush()

        responses = [self._await(request_id) for request_id in ids]
        for response in responses:
            if response["type"] == "error":
                _raise_remote(response)
        return responses

    def close(self) -> None:
        for stream in (self._writer, self._reader):
            try:
                stream.close()
            except OSError:
                pass
        if self._sock is not None:
            try:
                self._sock.shutdown(socket.SHUT_RDWR)
            except OSError:
                pass
            self._sock.close()
        if self._process is not None:
            try:
                self._process.wait(timeout=5)
            except subprocess.TimeoutExpired:
                self._process.kill()

    def _send(self, message: dict) -> None:
        try:
            self._writer.write(protocol.encode(message))
            if message["type"] == "hello":
                self._writer.flush()
        except (OSError, ValueError) as e:
            raise BridgeConnectionError(f"Cannot write to simulator: {e}") from e

    def _read_message(self) -> dict:
        try:
            line = self._reader.readline()
        except (OSError, ValueError) as e:
            raise BridgeConnectionError(f"Cannot read from simulator: {e}") from e
        if not line:
            raise BridgeConnectionError("Simulator closed the connection")
        return protocol.decode(line)

    def _await(self, request_id: int) -> dict:
        while request_id not in self._pending:
            message = self._read_message()
            if "id" not in message:
                if message["type"] == "error":
                    _raise_remote(message)
                raise ProtocolError("Response without id", protocol.encode(message).decode())
            response_id = message["id"]
            if (
                not isinstance(response_id, int)
                or response_id not in self._outstanding
                or response_id in self._pending
            ):
                logger.warning(f"Dropping response with unrequested id {response_id!r}")
                continue
            self._pending[response_id] = message
        self._outstanding.discard(request_id)
        return self._pending.pop(request_id)


def _raise_remote(message: dict) -> None:
    code = message.get("code", protocol.INTERNAL)
    text = message.get("message", "")
    if code == protocol.STALE_HANDLE:
        raise StaleHandleError(text)
    raise RemoteError(code, text)


@with_connect_retry
def _open_socket(host: str, port: int) -> socket.socket:
    return socket.create_connection((host, port), timeout=10)


@log_call
def bridge_connect(endpoint: str) -> BridgeSession:
    """Open a session to `tcp://host:port` or `exec:<command>` and handshake.

    Raises:
        BridgeConnectionError: If the endpoint is unreachable or unknown
        ProtocolError: If the hello reply is not a protocol message
        HandshakeError: If the hello exchange fails
    """
    if endpoint.startswith("tcp://"):
        host, _, port = endpoint[len("tcp://"):].rpartition(":")
        try:
            sock = _open_socket(host or "127.0.0.1", int(port))
        except ValueError as e:
            raise BridgeConnectionError(f"Invalid endpoint {endpoint!r}") from e
        except OSError as e:
            raise BridgeConnectionError(f"Cannot connect to {endpoint}: {e}") from e
        sock.settimeout(None)
        session = BridgeSession.from_socket(sock)
    elif endpoint.startswith("exec:"):
        command = shlex.split(endpoint[len("exec:"):])
        if not command:
            raise BridgeConnectionError(f"Invalid endpoint {endpoint!r}")
        try:
            process = subprocess.Popen(command, stdin=subprocess.PIPE, stdout=subprocess.PIPE)
        except OSError as e:
            raise BridgeConnectionError(f"Cannot start {command[0]!r}: {e}") from e
        session = BridgeSession(process.stdout, process.stdin, process=process)
    else:
        raise BridgeConnectionError(
            f"Unknown endpoint {endpoint!r}; expected tcp://host:port or exec:<command>"
        )

    try:
        session.handshake()
    except Exception:
        session.close()
        raise
    return session


def _step_request(handle: StateHandle, action: Action) -> dict:
    return {"type": "step", "handle": handle.token, "action": protocol.action_to_wire(action)}


def _step_outcome(response: dict) -> StepOutcome:
    try:
        return StepOutcome(
            next_state=StateHandle(response["handle"]),
            observation=tuple(float(v) for v in response["observation"]),
            reward=float(response["reward"]),
            dead=bool(response["dead"]),
            terminal=bool(response.get("terminal", False)),
        )
    except (KeyError, TypeError, ValueError) as e:
        raise ProtocolError(f"Invalid step response ({e})", str(response)) from e


def bridge_reset(session: BridgeSession, seed: int) -> tuple[StateHandle, tuple[float, ...]]:
    """Reset the remote simulator and return the root handle and observation."""
    response = session.request({"type": "reset", "seed": int(seed)})
    return (
        StateHandle(response["handle"]),
        tuple(float(v) for v in response["observation"]),
    )


def bridge_step(session: BridgeSession, handle: StateHandle, action: Action) -> StepOutcome:
    """Step the state named by `handle`; the next state is a fresh handle.

    Raises:
        StaleHandleError: If `handle` was released or never issued
    """
    return _step_outcome(session.request(_step_request(handle, action)))


def bridge_step_many(
    session: BridgeSession, pairs: Iterable[tuple[StateHandle, Action]]
) -> list[StepOutcome]:
    """Pipelined `bridge_step`; outcomes come back in input order."""
    requests = [_step_request(handle, action) for handle, action in pairs]
    if not requests:
        return []
    return [_step_outcome(r) for r in session.request_many(requests)]


def bridge_release(session: BridgeSession, handles: Iterable[StateHandle]) -> ReleaseAck:
    """Free remote states. Unknown handles produce warnings, not errors."""
    response = session.request(
        {"type": "release", "handles": [h.token for h in handles]}
    )
    return ReleaseAck(
        ok=bool(response.get("ok", False)),
        warnings=tuple(response.get("warnings", ())),
    )


class RemoteEnvironment(Environment):
    """Environment whose states live in a remote simulator.

    States are `StateHandle` tokens. Handles issued during planning are
    released by `end_planning`, except the ones the caller keeps.
    """

    def __init__(self, session: BridgeSession):
        if session.descriptor is None:
            raise BridgeConnectionError("Session has not completed the handshake")
        self.session = session
        self._live: dict[StateHandle, None] = {}

    @classmethod
    def connect(cls, endpoint: str) -> "RemoteEnvironment":
        return cls(bridge_connect(endpoint))

    @property
    def descriptor(self) -> EnvironmentDescriptor:
        return self.session.descriptor

    @property
    def live_handles(self) -> tuple[StateHandle, ...]:
        return tuple(self._live)

    def reset(self, seed: int) -> tuple[StateHandle, tuple[float, ...]]:
        handle, observation = bridge_reset(self.session, seed)
        self._live[handle] = None
        return handle, observation

    def step(self, state: StateHandle, action: Action) -> StepOutcome:
        return self.step_batch([(state, action)])[0]

    def step_batch(self, pairs: Iterable[tuple[Any, Action]]) -> list[StepOutcome]:
        pairs = list(pairs)
        for _, action in pairs:
            if not self.action_space.contains(action):
                raise ContractViolationError(f"Action {action!r} is outside the action space")

        outcomes = bridge_step_many(self.session, pairs)
        for outcome in outcomes:
            self._live[outcome.next_state] = None
        return outcomes

    def end_planning(self, keep: Sequence[Any] = ()) -> None:
        keep = set(keep)
        released = [h for h in self._live if h not in keep]
        if not released:
            return

        ack = bridge_release(self.session, released)
        for handle in released:
            del self._live[handle]
        for warning in ack.warnings:
            logger.warning(f"Release: {warning}")
        logger.debug(f"Released {len(released)} remote states, {len(self._live)} kept")

    def close(self) -> None:
        self.session.close()
