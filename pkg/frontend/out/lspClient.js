"use strict";
// Thin LSP client over a spawned server process (stdio transport).
Object.defineProperty(exports, "__esModule", { value: true });
exports.LspStdioClient = void 0;
exports.validateConfig = validateConfig;
const node_child_process_1 = require("node:child_process");
const protocol_1 = require("./protocol");
function validateConfig(config) {
    if (!config.serverCommand) {
        return "deprscan: server command is not configured";
    }
    if (config.dbPaths.length === 0) {
        return "deprscan: no deprecation databases configured";
    }
    return undefined;
}
class LspStdioClient {
    config;
    child;
    reader = new protocol_1.FrameReader();
    nextId = 1;
    pending = new Map();
    diagnosticsListeners = [];
    versions = new Map();
    constructor(config) {
        this.config = config;
    }
    onDiagnostics(listener) {
        this.diagnosticsListeners.push(listener);
    }
    get running() {
        return this.child !== undefined && this.child.exitCode === null;
    }
    async start() {
        const args = ["serve"];
        for (const db of this.config.dbPaths) {
            args.push("--db", db);
        }
        const child = (0, node_child_process_1.spawn)(this.config.serverCommand, args, {
            stdio: ["pipe", "pipe", "pipe"],
        });
        this.child = child;
        await new Promise((resolve, reject) => {
            child.once("spawn", () => resolve());
            child.once("error", (err) => reject(err));
        });
        child.stdout.on("data", (chunk) => {
            this.reader.push(chunk, (msg) => this.dispatch(msg));
        });
        await this.request("initialize", {
            processId: process.pid,
            capabilities: {},
        });
        this.notify("initialized", {});
    }
    async stop() {
        if (!this.running) {
            return;
        }
        try {
            await this.request("shutdown", null);
            this.notify("exit", {});
        }
        finally {
            const child = this.child;
            await new Promise((resolve) => {
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
    didOpen(uri, text) {
        this.versions.set(uri, 1);
        this.notify("textDocument/didOpen", {
            textDocument: { uri, languageId: "python", version: 1, text },
        });
    }
    didChange(uri, text) {
        const version = (this.versions.get(uri) ?? 0) + 1;
        this.versions.set(uri, version);
        this.notify("textDocument/didChange", {
            textDocument: { uri, version },
            contentChanges: [{ text }],
        });
    }
    didClose(uri) {
        this.versions.delete(uri);
        this.notify("textDocument/didClose", { textDocument: { uri } });
    }
    async hover(uri, position) {
        const msg = await this.request("textDocument/hover", {
            textDocument: { uri },
            position,
        });
        return msg.result ?? null;
    }
    /** Resolves once the next publishDiagnostics for the uri arrives. */
    waitForDiagnostics(uri, timeoutMs = 10000) {
        return new Promise((resolve, reject) => {
            const timer = setTimeout(() => reject(new Error(`timed out waiting for diagnostics of ${uri}`)), timeoutMs);
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
    request(method, params) {
        const id = this.nextId++;
        const message = { jsonrpc: "2.0", id, method, params };
        return new Promise((resolve, reject) => {
            this.pending.set(id, (msg) => {
                if (msg.error) {
                    reject(new Error(`${method}: ${msg.error.message}`));
                }
                else {
                    resolve(msg);
                }
            });
            this.send(message);
        });
    }
    notify(method, params) {
        this.send({ jsonrpc: "2.0", method, params });
    }
    send(message) {
        if (!this.child?.stdin?.writable) {
            throw new Error("deprscan server is not running");
        }
        this.child.stdin.write((0, protocol_1.frame)(message));
    }
    dispatch(msg) {
        if (msg.id !== undefined && msg.method === undefined) {
            const resolver = this.pending.get(msg.id);
            if (resolver) {
                this.pending.delete(msg.id);
                resolver(msg);
            }
            return;
        }
        if (msg.method === "textDocument/publishDiagnostics") {
            const params = msg.params;
            for (const listener of this.diagnosticsListeners) {
                listener(params);
            }
        }
        // other server notifications are ignored
    }
}
exports.LspStdioClient = LspStdioClient;
//# sourceMappingURL=lspClient.js.map