"""Loopback simulator server: serves a built-in environment over the bridge protocol.

Usage:
    python -m src.bridge.server --env chain_trap            # stdin/stdout
    python -m src.bridge.server --env chain_trap --tcp 127.0.0.1:7400
"""

import argparse
import logging
import socket
import sys
from typing import Any, BinaryIO

from ..environments import ENVIRONMENTS, make_environment
from ..environments.base import Environment
from . import protocol
from .exceptions import ProtocolError

logger = logging.getLogger(__name__)


class LoopbackServer:
    """Hold environment states behind tokens and answer protocol requests.

    Tokens are "h0", "h1", ... in issue order and are never reused, so a
    released token stays stale for the lifetime of the server.
    """

    def __init__(self, env: Environment):
        self.env = env
        self._states: dict[str, Any] = {}
        self._issued = 0

    @property
    def live_count(self) -> int:
        return len(self._states)

    def _issue(self, state: Any) -> str:
        token = f"h{self._issued}"
        self._issued += 1
        self._states[token] = state
        return token

    def handle(self, message: dict) -> dict:
        """Answer one decoded request."""
        kind = message["type"]
        request_id = message.get("id")

        if kind == "hello":
            return protocol.hello(self.env.descriptor.to_dict())

        try:
            if kind == "reset":
                state, observation = self.env.reset(int(message.get("seed", 0)))
                return {
                    "type": "reset",
                    "id": request_id,
                    "handle": self._issue(state),
                    "observation": list(observation),
                }

            if kind == "step":
                token = message["handle"]
                if token not in self._states:
                    return protocol.error(
                        protocol.STALE_HANDLE, f"Unknown handle {token!r}", request_id
                    )
                try:
                    action = protocol.action_from_wire(
                        self.env.action_space, message["action"]
                    )
                except (TypeError, ValueError) as e:
                    return protocol.error(protocol.BAD_ACTION, str(e), request_id)

                outcome = self.env.step(self._states[token], action)
                return {
                    "type": "step",
                    "id": request_id,
                    "handle": self._issue(outcome.next_state),
                    "observation": list(outcome.observation),
                    "reward": outcome.reward,
                    "dead": outcome.dead,
                    "terminal": outcome.terminal,
                }

            if kind == "release":
                warnings = []
                for token in message.get("handles", []):
                    if self._states.pop(token, None) is None:
                        warnings.append(f"unknown handle {token}")
                return {"type": "release", "id": request_id, "ok": True, "warnings": warnings}

        except KeyError as e:
            return protocol.error(protocol.MALFORMED, f"Missing field {e}", request_id)
        except Exception as e:
            logger.exception(f"Error handling {kind} request")
            return protocol.error(protocol.INTERNAL, str(e), request_id)

        return protocol.error(protocol.MALFORMED, f"Unexpected message type {kind!r}", request_id)

    def serve(self, reader: BinaryIO, writer: BinaryIO) -> None:
        """Answer requests line by line until the reader reaches end of stream."""
        for raw in iter(reader.readline, b""):
            if not raw.strip():
                continue
            try:
                reply = self.handle(protocol.decode(raw))
            except ProtocolError as e:
                logger.warning(f"Malformed request: {e}")
                reply = protocol.error(protocol.MALFORMED, str(e))
            try:
                writer.write(protocol.encode(reply))
                writer.flush()
            except (OSError, ValueError):
                logger.info("Client went away")
                return


def serve_tcp(env_name: str, host: str, port: int) -> None:
    """Accept connections one at a time; each gets a fresh environment and token space."""
    with socket.create_server((host, port)) as listener:
        logger.info(f"Serving {env_name} on tcp://{host}:{port}")
        while True:
            conn, address = listener.accept()
            logger.info(f"Connection from {address[0]}:{address[1]}")
            with conn:
                server = LoopbackServer(make_environment(env_name))
                server.serve(conn.makefile("rb"), conn.makefile("wb"))


def main() -> int:
    parser = argparse.ArgumentParser(
        description="Serve a built-in environment over the NDJSON bridge protocol"
    )
    parser.add_argument("--env", required=True, choices=sorted(ENVIRONMENTS))
    parser.add_argument("--tcp", metavar="HOST:PORT", help="Listen on TCP instead of stdio")
    parser.add_argument("--log-level", default="WARNING")
    args = parser.parse_args()

    # stdout carries the protocol; logs go to stderr
    logging.basicConfig(
        level=getattr(logging, args.log_level.upper(), logging.WARNING),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )

    if args.tcp:
        host, _, port = args.tcp.rpartition(":")
        try:
            serve_tcp(args.env, host or "127.0.0.1", int(port))
        except KeyboardInterrupt:
            pass
        return 0

    LoopbackServer(make_environment(args.env)).serve(sys.stdin.buffer, sys.stdout.buffer)
    return 0


if __name__ == "__main__":
    sys.exit(main())
