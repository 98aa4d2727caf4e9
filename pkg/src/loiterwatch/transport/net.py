"""TCP sender and receiver for feature records.

The sender runs a writer thread behind a bounded queue (the in-flight
window): callers block on send_record once the window is full. While the
link is down records accumulate in a deque spanning at most the configured
buffer seconds; older records are dropped oldest-first and counted.
Sequence numbers keep increasing across reconnects so the receiver's
per-camera gap tracking reports exactly what was lost.
"""

from __future__ import annotations

import logging
import queue
import socket
import struct
import threading
import time
from collections import deque
from dataclasses import dataclass, field, replace

from ..logs import ErrorLog, write_csv
from ..tracking import FeatureRecord
from .session import (Session, TransportConfig, make_sender_session,
                      unwrap_session_key, wrap_session_key)
from .wire import (KIND_DATA, KIND_HANDSHAKE_ACK, KIND_HANDSHAKE_INIT,
                   MAX_FRAME, MODE_BYTES, MODE_HANDSHAKE, FrameRejected,
                   WireMessage, build_frame, decode_record, encode_record,
                   pack_header, parse_header, split_frame)

log = logging.getLogger(__name__)

ACK_PAYLOAD = b"ok"
LATENCY_HEADER = ["sequence", "mode", "bytes", "latency_us"]

_STOP = object()


def now_us() -> int:
    return time.time_ns() // 1000


def read_exact(sock: socket.socket, n: int, stop: threading.Event | None = None) -> bytes | None:
    """Read exactly n bytes; None on clean EOF. Retries on timeout until stop."""
    chunks = []
    remaining = n
    while remaining > 0:
        try:
            chunk = sock.recv(remaining)
        except socket.timeout:
            if stop is not None and stop.is_set():
                return None
            continue
        if not chunk:
            return None
        chunks.append(chunk)
        remaining -= len(chunk)
    return b"".join(chunks)


def read_frame(sock: socket.socket, stop: threading.Event | None = None) -> tuple[bytes, bytes] | None:
    """Next (header, body) pair off the socket; None on EOF."""
    prefix = read_exact(sock, 4, stop)
    if prefix is None:
        return None
    (length,) = struct.unpack(">I", prefix)
    if not 16 <= length <= MAX_FRAME:
        raise FrameRejected(f"frame length {length} out of bounds")
    frame = read_exact(sock, length, stop)
    if frame is None:
        return None
    return split_frame(frame)


@dataclass
class LatencyStats:
    """Per-message one-way latency samples collected at the receiver."""

    samples: list[tuple[int, str, int, int]] = field(default_factory=list)

    def add(self, sequence: int, mode: str, nbytes: int, latency_us: int) -> None:
        self.samples.append((sequence, mode, nbytes, latency_us))

    def latencies(self) -> list[int]:
        return [s[3] for s in self.samples]

    @property
    def mean_us(self) -> float:
        xs = self.latencies()
        return sum(xs) / len(xs) if xs else 0.0

    @property
    def p95_us(self) -> float:
        xs = sorted(self.latencies())
        if not xs:
            return 0.0
        return float(xs[min(len(xs) - 1, int(0.95 * (len(xs) - 1) + 0.5))])

    @property
    def max_us(self) -> int:
        xs = self.latencies()
        return max(xs) if xs else 0

    def write_csv(self, path) -> None:
        write_csv(path, LATENCY_HEADER,
                  [[str(seq), mode, str(nb), str(lat)] for seq, mode, nb, lat in self.samples])


class FeatureSender:
    """Edge-side record sender for one camera stream."""

    def __init__(self, config: TransportConfig, error_log: ErrorLog | None = None):
        self.config = config
        self.error_log = error_log or ErrorLog()
        self.dropped = 0
        self._queue: queue.Queue = queue.Queue(maxsize=config.window)
        self._buffer: deque = deque()  # [arrival_s, sequence, sent_at, payload]
        self._seq = 0
        self._sock: socket.socket | None = None
        self._session: Session | None = None
        self._lock = threading.Lock()
        self._writer: threading.Thread | None = None

    # -- connection management ------------------------------------------

    def connect(self) -> None:
        sock = socket.create_connection(
            (self.config.host, self.config.port), timeout=self.config.connect_timeout)
        sock.settimeout(None)
        # Frames are small; without this Nagle stalls them behind delayed acks.
        sock.setsockopt(socket.IPPROTO_TCP, socket.TCP_NODELAY, 1)
        if self.config.mode == "handshake-then-symmetric":
            session = self._handshake(sock)
        else:
            session = make_sender_session(self.config)
        with self._lock:
            self._sock, self._session = sock, session
        if self._writer is None:
            self._writer = threading.Thread(target=self._writer_loop, daemon=True)
            self._writer.start()

    def _handshake(self, sock: socket.socket) -> Session:
        wrapped, session = wrap_session_key(self.config)
        header = pack_header(MODE_HANDSHAKE, KIND_HANDSHAKE_INIT, 0, now_us())
        sock.sendall(build_frame(header, wrapped))
        got = read_frame(sock)
        if got is None:
            raise FrameRejected("connection closed during handshake")
        ack_header, ack_body = got
        _, mode, kind, _, _ = parse_header(ack_header)
        if mode != MODE_HANDSHAKE or kind != KIND_HANDSHAKE_ACK:
            raise FrameRejected("expected handshake ack")
        if session.open(ack_header, ack_body) != ACK_PAYLOAD:
            raise FrameRejected("bad handshake ack payload")
        return session

    def reconnect(self) -> None:
        """Re-establish the link; buffered records flush in order."""
        self._close_socket()
        self.connect()

    # -- sending ---------------------------------------------------------

    def send_record(self, record: FeatureRecord, camera_id: str) -> int:
        """Queue one record; blocks while the in-flight window is full.

        Returns the sequence number assigned to the record.
        """
        payload = encode_record(record, camera_id)
        with self._lock:
            self._seq += 1
            seq = self._seq
        self._queue.put([time.monotonic(), seq, now_us(), payload])
        return seq

    def _writer_loop(self) -> None:
        while True:
            if self._sock is not None and self._buffer:
                item = self._buffer.popleft()
                self._transmit(item)
                continue
            item = self._queue.get()
            if item is _STOP:
                self._queue.task_done()
                return
            if self._sock is not None and not self._buffer:
                self._transmit(item)
            else:
                # A backlog exists (or the link is down): joining its tail
                # keeps records in sequence order across reconnects.
                self._buffer_item(item)
            self._queue.task_done()

    def _transmit(self, item: list) -> None:
        _, seq, sent_at, payload = item
        with self._lock:
            sock, session = self._sock, self._session
        if sock is None or session is None:
            self._buffer_item(item)
            return
        header = pack_header(session.mode_byte, KIND_DATA, seq, sent_at)
        try:
            sock.sendall(build_frame(header, session.seal(header, payload)))
        except OSError as exc:
            log.warning("send failed (seq %d): %s; buffering", seq, exc)
            self._close_socket()
            # Goes back to the buffer front: anything still queued is newer.
            self._buffer.appendleft(item)

    def _buffer_item(self, item: list) -> None:
        self._buffer.append(item)
        # Keep at most buffer_seconds of records, dropping oldest first.
        while self._buffer and item[0] - self._buffer[0][0] > self.config.buffer_seconds:
            dropped = self._buffer.popleft()
            self.dropped += 1
            self.error_log.append("transport", f"dropped buffered record seq {dropped[1]}")

    def flush(self, timeout: float = 10.0) -> None:
        """Block until every queued record has been handed to the socket."""
        deadline = time.monotonic() + timeout
        while time.monotonic() < deadline:
            if self._queue.unfinished_tasks == 0 and (self._sock is None or not self._buffer):
                return
            time.sleep(0.005)

    def close(self) -> None:
        if self._writer is not None:
            self.flush()
            self._queue.put(_STOP)
            self._writer.join(timeout=5.0)
            self._writer = None
        self._close_socket()

    def _close_socket(self) -> None:
        with self._lock:
            sock, self._sock, self._session = self._sock, None, None
        if sock is not None:
            try:
                sock.close()
            except OSError:
                pass


class FogReceiver:
    """Accepts sender connections and decodes their record frames.

    Per camera, sequence numbers must keep increasing: regressions and
    duplicates are rejected, gaps are recorded. Frames failing header or
    AEAD checks are dropped and counted, never delivered.
    """

    def __init__(self, config: TransportConfig, on_message=None,
                 error_log: ErrorLog | None = None):
        self.config = config
        self.on_message = on_message
        self.error_log = error_log or ErrorLog()
        self.latency = LatencyStats()
        self.messages: list[WireMessage] = []
        self.gaps: list[tuple[str, int, int]] = []  # camera, first missing, received
        self.rejected = 0
        self.duplicates = 0
        self._last_seq: dict[str, int] = {}
        self._stop = threading.Event()
        self._listener: socket.socket | None = None
        self._threads: list[threading.Thread] = []
        self._conns: list[socket.socket] = []
        self._lock = threading.Lock()
        self.port: int | None = None

    def start(self) -> None:
        listener = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
        listener.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        listener.bind((self.config.host, self.config.port))
        listener.listen(8)
        listener.settimeout(0.2)
        self._listener = listener
        self.port = listener.getsockname()[1]
        accept_thread = threading.Thread(target=self._accept_loop, daemon=True)
        accept_thread.start()
        self._threads.append(accept_thread)

    def _accept_loop(self) -> None:
        assert self._listener is not None
        while not self._stop.is_set():
            try:
                conn, _addr = self._listener.accept()
            except socket.timeout:
                continue
            except OSError:
                return
            conn.settimeout(0.5)
            conn.setsockopt(socket.IPPROTO_TCP, socket.TCP_NODELAY, 1)
            with self._lock:
                self._conns.append(conn)
            thread = threading.Thread(target=self.receive_loop, args=(conn,), daemon=True)
            thread.start()
            self._threads.append(thread)

    def receive_loop(self, conn: socket.socket) -> None:
        """Drain one connection: establish its session, then deliver frames."""
        try:
            session = self._connection_session(conn)
            if session is None:
                return
            while not self._stop.is_set():
                try:
                    got = read_frame(conn, self._stop)
                except FrameRejected as exc:
                    self._reject(str(exc))
                    return  # cannot trust framing any further
                if got is None:
                    return
                self._handle_frame(session, *got)
        except OSError:
            return
        finally:
            try:
                conn.close()
            except OSError:
                pass

    def _connection_session(self, conn: socket.socket) -> Session | None:
        if self.config.mode != "handshake-then-symmetric":
            return make_sender_session(self.config)
        got = read_frame(conn, self._stop)
        if got is None:
            return None
        header, body = got
        try:
            _, mode, kind, _, _ = parse_header(header)
            if mode != MODE_HANDSHAKE or kind != KIND_HANDSHAKE_INIT:
                raise FrameRejected("expected handshake init")
            session = unwrap_session_key(self.config, body)
        except FrameRejected as exc:
            self._reject(f"handshake failed: {exc}")
            return None
        ack_header = pack_header(MODE_HANDSHAKE, KIND_HANDSHAKE_ACK, 0, now_us())
        conn.sendall(build_frame(ack_header, session.seal(ack_header, ACK_PAYLOAD)))
        return session

    def _handle_frame(self, session: Session, header: bytes, body: bytes) -> None:
        received_at = now_us()
        try:
            version, mode, kind, sequence, sent_at = parse_header(header)
            if mode != self.config.mode_byte:
                raise FrameRejected(f"mode {MODE_BYTES[mode]!r} on a {self.config.mode!r} link")
            if kind != KIND_DATA:
                raise FrameRejected(f"unexpected frame kind {kind}")
            payload = session.open(header, body)
            camera_id, record = decode_record(payload)
        except FrameRejected as exc:
            self._reject(str(exc))
            return

        with self._lock:
            last = self._last_seq.get(camera_id)
            if last is not None and sequence <= last:
                self.duplicates += 1
                self.error_log.append(camera_id, f"duplicate or regressed sequence {sequence}")
                return
            if last is not None and sequence > last + 1:
                self.gaps.append((camera_id, last + 1, sequence))
                self.error_log.append(
                    camera_id, f"sequence gap: expected {last + 1}, got {sequence}")
            self._last_seq[camera_id] = sequence
            self.latency.add(sequence, MODE_BYTES[mode],
                             4 + len(header) + len(body), received_at - sent_at)
        message = WireMessage(version=version, mode=mode, kind=kind,
                              sequence=sequence, sent_at=sent_at,
                              camera_id=camera_id, record=record)
        if self.on_message is not None:
            self.on_message(message)
        else:
            with self._lock:
                self.messages.append(message)

    def _reject(self, reason: str) -> None:
        with self._lock:
            self.rejected += 1
        self.error_log.append("transport", f"frame rejected: {reason}")
        log.warning("frame rejected: %s", reason)

    @property
    def message_count(self) -> int:
        with self._lock:
            return len(self.messages)

    def stop(self) -> None:
        self._stop.set()
        if self._listener is not None:
            try:
                self._listener.close()
            except OSError:
                pass
        with self._lock:
            conns = list(self._conns)
        for conn in conns:
            try:
                conn.close()
            except OSError:
                pass
        for thread in self._threads:
            thread.join(timeout=2.0)


def measure_latency(config: TransportConfig, records: list[FeatureRecord],
                    camera_id: str = "bench",
                    timeout: float = 30.0) -> tuple[LatencyStats, list[FeatureRecord]]:
    """Loopback round: stream records through a local receiver, return
    (latency stats, decoded records in arrival order)."""
    receiver = FogReceiver(config)
    receiver.start()
    sender_config = replace(config, port=receiver.port)
    sender = FeatureSender(sender_config)
    sender.connect()
    try:
        for record in records:
            sender.send_record(record, camera_id)
        sender.flush(timeout=timeout)
        deadline = time.monotonic() + timeout
        while receiver.message_count < len(records) and time.monotonic() < deadline:
            time.sleep(0.002)
    finally:
        sender.close()
        receiver.stop()
    return receiver.latency, [m.record for m in receiver.messages]
