// Thin LSP client over a spawned server process (stdio transport).

import { ChildProcess, spawn } from "node:child_process";
import {
    Diagnostic,
    FrameReader,
    Hover,
    Position,
    PublishDiagnosticsParams,
    RpcMessage,
    frame,
} from "./protocol";

export interface ClientConfig {
    /** Server executable, e.g. "deprscan"; run with serve + --db flags. */
    serverCommand: string;
    dbPaths: string[];
    enableApproximate: boolean;
}

export function validateConfig(config: ClientConfig): string | undefined {
    if (!config.serverCommand) {
        return "deprscan: server command is not configured";
    }
    if (config.dbPaths.length === 0) {
        return "deprscan: no deprecation databases configured";
    }
    return undefined;
}

type DiagnosticsListener = (params: PublishDiagnosticsParams) => void;

export class LspStdioClient {
    private child: ChildProcess | undefined;
    private readonly reader = new FrameReader();
    private nextId = 1;
    private readonly pending = new Map<number, (msg: RpcMessage) => void>();
    private readonly diagnosticsListeners: DiagnosticsListener[] = [];
    private readonly versions = new Map<string, number>();

    constructor(private readonly config: ClientConfig) {}

    onDiagnostics(listener: DiagnosticsListener): void {
        this.diagnosticsListeners.push(listener);
    }

    get running(): boolean {
        return this.child !== undefined && this.child.exitCode === null;
    }

    async start(): Promise<void> {
        const args = ["serve"];
        for (const db of this.config.dbPaths) {
            args.push("--db", db);
        }
        const child = spawn(this.config.serverCommand, args, {
            stdio: ["pipe", "pipe", "pipe"],
        });
        this.child = child;
        await new Promise<void>((resolve, reject) => {
            child.once("spawn", () => resolve());
            child.once("error", (err) => reject(err));
        });
        child.stdout!.on("data", (chunk: Buffer) => {
            this.reader.push(chunk, (msg) => this.dispatch(msg));
        });
        await this.request("initialize", {
            processId: process.pid,
            capabilities: {},
        });
        this.notify("initialized", {});
    }

    async stop(): Promise<void> {
        if (!this.running) {
            return;
        }
        try {
            await this.request("shutdown", null);
            this.notify("exit", {});
        } finally {
            const child = this.child!;
            await new Promise<void>((resolve) => {
                const timer = setTimeout(() => {
                    child.kill();
                    resolve();
                }, 2000);
                child.once("exit", () => {
                    clearTimeout(timer);
                    resolve();
                });
            });
        }
    }

    didOpen(uri: string, text: string): void {
        this.versions.set(uri, 1);
        this.notify("textDocument/didOpen", {
            textDocument: { uri, languageId: "python", version: 1, text },
        });
    }

    didChange(uri: string, text: string): void {
        const version = (this.versions.get(uri) ?? 0) + 1;
        this.versions.set(uri, version);
        this.notify("textDocument/didChange", {
            textDocument: { uri, version },
            contentChanges: [{ text }],
        });
    }

    didClose(uri: string): void {
        this.versions.delete(uri);
        this.notify("textDocument/didClose", { textDocument: { uri } });
    }

    async hover(uri: string, position: Position): Promise<Hover | null> {
        const msg = await this.request("textDocument/hover", {
            textDocument: { uri },
            position,
        });
        return (msg.result as Hover | null) ?? null;
    }

    /** Resolves once the next publishDiagnostics for the uri arrives. */
    waitForDiagnostics(uri: string, timeoutMs = 10000): Promise<Diagnostic[]> {
        return new Promise((resolve, reject) => {
            const timer = setTimeout(
                () => reject(new Error(`timed out waiting for diagnostics of ${uri}`)),
                timeoutMs,
            );
            let done = false;
            this.onDiagnostics((params) => {
                if (!done && params.uri === uri) {
                    done = true;
                    clearTimeout(timer);
                    resolve(params.diagnostics);
                }
            });
        });
    }

    private request(method: string, params: unknown): Promise<RpcMessage> {
        const id = this.nextId++;
        const message: RpcMessage = { jsonrpc: "2.0", id, method, params };
        return new Promise((resolve, reject) => {
            this.pending.set(id, (msg) => {
                if (msg.error) {
                    reject(new Error(`${method}: ${msg.error.message}`));
                } else {
                    resolve(msg);
                }
            });
            this.send(message);
        });
    }

    private notify(method: string, params: unknown): void {
        this.send({ jsonrpc: "2.0", method, params });
    }

    private send(message: RpcMessage): void {
        if (!this.child?.stdin?.writable) {
            throw new Error("deprscan server is not running");
        }
        this.child.stdin.write(frame(message));
    }

    private dispatch(msg: RpcMessage): void {
        if (msg.id !== undefined && msg.method === undefined) {
            const resolver = this.pending.get(msg.id);
            if (resolver) {
                this.pending.delete(msg.id);
                resolver(msg);
            }
            return;
        }
        if (msg.method === "textDocument/publishDiagnostics") {
            const params = msg.params as PublishDiagnosticsParams;
            for (const listener of this.diagnosticsListeners) {
                listener(params);
            }
        }
        // other server notifications are ignored
    }
}
