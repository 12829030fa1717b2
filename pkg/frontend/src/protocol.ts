// Minimal LSP wire types used by the client.

export interface Position {
    line: number; // 0-based
    character: number;
}

export interface Range {
    start: Position;
    end: Position;
}

export const enum DiagnosticSeverity {
    Error = 1,
    Warning = 2,
    Information = 3,
    Hint = 4,
}

export interface Diagnostic {
    range: Range;
    severity?: DiagnosticSeverity;
    source?: string;
    message: string;
}

export interface PublishDiagnosticsParams {
    uri: string;
    version?: number;
    diagnostics: Diagnostic[];
}

export interface Hover {
    contents: { kind: string; value: string };
    range?: Range;
}

export interface RpcMessage {
    jsonrpc: "2.0";
    id?: number;
    method?: string;
    params?: unknown;
    result?: unknown;
    error?: { code: number; message: string };
}

export function frame(message: RpcMessage): Buffer {
    const body = Buffer.from(JSON.stringify(message), "utf8");
    return Buffer.concat([
        Buffer.from(`Content-Length: ${body.length}\r\n\r\n`, "ascii"),
        body,
    ]);
}

/** Incremental Content-Length framed message parser. */
export class FrameReader {
    private buffer = Buffer.alloc(0);

    push(chunk: Buffer, onMessage: (msg: RpcMessage) => void): void {
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
            onMessage(JSON.parse(body) as RpcMessage);
        }
    }
}
