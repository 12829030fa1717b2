"use strict";
// VS Code entry point: launches the deprscan server, forwards document
// events, and renders server-published diagnostics and hover text.
var __createBinding = (this && this.__createBinding) || (Object.create ? (function(o, m, k, k2) {
    if (k2 === undefined) k2 = k;
    var desc = Object.getOwnPropertyDescriptor(m, k);
    if (!desc || ("get" in desc ? !m.__esModule : desc.writable || desc.configurable)) {
      desc = { enumerable: true, get: function() { return m[k]; } };
    }
    Object.defineProperty(o, k2, desc);
}) : (function(o, m, k, k2) {
    if (k2 === undefined) k2 = k;
    o[k2] = m[k];
}));
var __setModuleDefault = (this && this.__setModuleDefault) || (Object.create ? (function(o, v) {
    Object.defineProperty(o, "default", { enumerable: true, value: v });
}) : function(o, v) {
    o["default"] = v;
});
var __importStar = (this && this.__importStar) || (function () {
    var ownKeys = function(o) {
        ownKeys = Object.getOwnPropertyNames || function (o) {
            var ar = [];
            for (var k in o) if (Object.prototype.hasOwnProperty.call(o, k)) ar[ar.length] = k;
            return ar;
        };
        return ownKeys(o);
    };
    return function (mod) {
        if (mod && mod.__esModule) return mod;
        var result = {};
        if (mod != null) for (var k = ownKeys(mod), i = 0; i < k.length; i++) if (k[i] !== "default") __createBinding(result, mod, k[i]);
        __setModuleDefault(result, mod);
        return result;
    };
})();
Object.defineProperty(exports, "__esModule", { value: true });
exports.activate = activate;
exports.deactivate = deactivate;
const vscode = __importStar(require("vscode"));
const controller_1 = require("./controller");
const lspClient_1 = require("./lspClient");
let client;
function readConfig() {
    const cfg = vscode.workspace.getConfiguration("deprscan");
    return {
        serverCommand: cfg.get("serverCommand", "deprscan"),
        dbPaths: cfg.get("dbPaths", []),
        enableApproximate: cfg.get("enableApproximate", false),
    };
}
function toVsRange(range) {
    return new vscode.Range(new vscode.Position(range.start.line, range.start.character), new vscode.Position(range.end.line, range.end.character));
}
function toVsDiagnostic(d) {
    const severity = d.severity === 3 /* DiagnosticSeverity.Information */
        ? vscode.DiagnosticSeverity.Information
        : vscode.DiagnosticSeverity.Warning;
    const out = new vscode.Diagnostic(toVsRange(d.range), d.message, severity);
    out.source = "deprscan";
    return out;
}
class VsCodeSurface {
    collection = vscode.languages.createDiagnosticCollection("deprscan");
    decorationType = vscode.window.createTextEditorDecorationType({
        backgroundColor: "rgba(200, 120, 0, 0.15)",
        border: "1px solid rgba(200, 120, 0, 0.6)",
    });
    decorated = new Map();
    uris = new Map();
    constructor(context) {
        context.subscriptions.push(this.collection, this.decorationType);
        context.subscriptions.push(vscode.window.onDidChangeVisibleTextEditors(() => this.repaint()));
    }
    rememberUri(uri) {
        this.uris.set(uri.toString(), uri);
    }
    setDiagnostics(uri, diagnostics) {
        const vsUri = this.uris.get(uri);
        if (vsUri) {
            this.collection.set(vsUri, diagnostics.map(toVsDiagnostic));
        }
    }
    setDecorations(uri, ranges) {
        this.decorated.set(uri, ranges);
        this.repaint();
    }
    showError(message) {
        vscode.window.showErrorMessage(message);
    }
    repaint() {
        for (const editor of vscode.window.visibleTextEditors) {
            const ranges = this.decorated.get(editor.document.uri.toString()) ?? [];
            editor.setDecorations(this.decorationType, ranges.map(toVsRange));
        }
    }
}
async function activate(context) {
    const config = readConfig();
    const surface = new VsCodeSurface(context);
    const problem = (0, lspClient_1.validateConfig)(config);
    if (problem) {
        surface.showError(problem);
        return; // stay inert
    }
    client = new lspClient_1.LspStdioClient(config);
    const controller = new controller_1.ExtensionController(client, surface, config);
    try {
        await client.start();
    }
    catch (err) {
        surface.showError(`deprscan: cannot start server: ${String(err)}`);
        client = undefined;
        return;
    }
    const isPython = (doc) => doc.languageId === "python";
    const open = (doc) => {
        if (isPython(doc)) {
            surface.rememberUri(doc.uri);
            client.didOpen(doc.uri.toString(), doc.getText());
        }
    };
    for (const doc of vscode.workspace.textDocuments) {
        open(doc);
    }
    context.subscriptions.push(vscode.workspace.onDidOpenTextDocument(open), vscode.workspace.onDidChangeTextDocument((e) => {
        if (isPython(e.document)) {
            client.didChange(e.document.uri.toString(), e.document.getText());
        }
    }), vscode.workspace.onDidCloseTextDocument((doc) => {
        if (isPython(doc)) {
            client.didClose(doc.uri.toString());
        }
    }), vscode.languages.registerHoverProvider({ language: "python" }, {
        async provideHover(document, position) {
            const hover = await controller.hover(document.uri.toString(), {
                line: position.line,
                character: position.character,
            });
            if (!hover) {
                return null;
            }
            // server text displayed verbatim
            return new vscode.Hover(hover.contents.value);
        },
    }));
}
async function deactivate() {
    await client?.stop();
    client = undefined;
}
//# sourceMappingURL=extension.js.map