"use strict";
// Minimal LSP wire types used by the client.
Object.defineProperty(exports, "__esModule", { value: true });
exports.FrameReader = void 0;
exports.frame = frame;
function frame(message) {
    const body = Buffer.from(JSON.stringify(message), "utf8");
    return Buffer.concat([
        Buffer.from(`Content-Length: ${body.length}\r\n\r\n`, "ascii"),
        body,
    ]);
}
/** Incremental Content-Length framed message parser. */
class FrameReader {
    buffer = Buffer.alloc(0);
    push(chunk, onMessage) {
        this.buffer = Buffer.concat([this.buffer, chunk]);
        for (;;) {
            const headerEnd = this.buffer.indexOf("\r\n\r\n");
            if (headerEnd < 0) {
                return;
            }
            const header = this.buffer.subarray(0, headerEnd).toString("ascii");
            const match = /content-length:\s*(\d+)/i.exec(header);
            if (!match) {
                throw new Error(`missing Content-Length in header: ${header}`);
            }
            const length = parseInt(match[1], 10);
            const start = headerEnd + 4;
            if (this.buffer.length < start + length) {
                return;
            }
            const body = this.buffer.subarray(start, start + length).toString("utf8");
            this.buffer = this.buffer.subarray(start + length);
            onMessage(JSON.parse(body));
        }
    }
}
exports.FrameReader = FrameReader;
//# sourceMappingURL=protocol.js.map