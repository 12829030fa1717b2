// VS Code entry point: launches the deprscan server, forwards document
// events, and renders server-published diagnostics and hover text.

import * as vscode from "vscode";
import { ExtensionController, EditorSurface } from "./controller";
import { ClientConfig, LspStdioClient, validateConfig } from "./lspClient";
import { Diagnostic, DiagnosticSeverity, Range as LspRange } from "./protocol";

let client: LspStdioClient | undefined;

function readConfig(): ClientConfig {
    const cfg = vscode.workspace.getConfiguration("deprscan");
    return {
        serverCommand: cfg.get<string>("serverCommand", "deprscan"),
        dbPaths: cfg.get<string[]>("dbPaths", []),
        enableApproximate: cfg.get<boolean>("enableApproximate", false),
    };
}

function toVsRange(range: LspRange): vscode.Range {
    return new vscode.Range(
        new vscode.Position(range.start.line, range.start.character),
        new vscode.Position(range.end.line, range.end.character),
    );
}

function toVsDiagnostic(d: Diagnostic): vscode.Diagnostic {
    const severity =
        d.severity === DiagnosticSeverity.Information
            ? vscode.DiagnosticSeverity.Information
            : vscode.DiagnosticSeverity.Warning;
    const out = new vscode.Diagnostic(toVsRange(d.range), d.message, severity);
    out.source = "deprscan";
    return out;
}

class VsCodeSurface implements EditorSurface {
    private readonly collection = vscode.languages.createDiagnosticCollection("deprscan");
    private readonly decorationType = vscode.window.createTextEditorDecorationType({
        backgroundColor: "rgba(200, 120, 0, 0.15)",
        border: "1px solid rgba(200, 120, 0, 0.6)",
    });
    private readonly decorated = new Map<string, LspRange[]>();
    private readonly uris = new Map<string, vscode.Uri>();

    constructor(context: vscode.ExtensionContext) {
        context.subscriptions.push(this.collection, this.decorationType);
        context.subscriptions.push(
            vscode.window.onDidChangeVisibleTextEditors(() => this.repaint()),
        );
    }

    rememberUri(uri: vscode.Uri): void {
        this.uris.set(uri.toString(), uri);
    }

    setDiagnostics(uri: string, diagnostics: Diagnostic[]): void {
        const vsUri = this.uris.get(uri);
        if (vsUri) {
            this.collection.set(vsUri, diagnostics.map(toVsDiagnostic));
        }
    }

    setDecorations(uri: string, ranges: LspRange[]): void {
        this.decorated.set(uri, ranges);
        this.repaint();
    }

    showError(message: string): void {
        vscode.window.showErrorMessage(message);
    }

    private repaint(): void {
        for (const editor of vscode.window.visibleTextEditors) {
            const ranges = this.decorated.get(editor.document.uri.toString()) ?? [];
            editor.setDecorations(this.decorationType, ranges.map(toVsRange));
        }
    }
}

export async function activate(context: vscode.ExtensionContext): Promise<void> {
    const config = readConfig();
    const surface = new VsCodeSurface(context);

    const problem = validateConfig(config);
    if (problem) {
        surface.showError(problem);
        return; // stay inert
    }

    client = new LspStdioClient(config);
    const controller = new ExtensionController(client, surface, config);

    try {
        await client.start();
    } catch (err) {
        surface.showError(`deprscan: cannot start server: ${String(err)}`);
        client = undefined;
        return;
    }

    const isPython = (doc: vscode.TextDocument) => doc.languageId === "python";

    const open = (doc: vscode.TextDocument) => {
        if (isPython(doc)) {
            surface.rememberUri(doc.uri);
            client!.didOpen(doc.uri.toString(), doc.getText());
        }
    };
    for (const doc of vscode.workspace.textDocuments) {
        open(doc);
    }
    context.subscriptions.push(
        vscode.workspace.onDidOpenTextDocument(open),
        vscode.workspace.onDidChangeTextDocument((e) => {
            if (isPython(e.document)) {
                client!.didChange(e.document.uri.toString(), e.document.getText());
            }
        }),
        vscode.workspace.onDidCloseTextDocument((doc) => {
            if (isPython(doc)) {
                client!.didClose(doc.uri.toString());
            }
        }),
        vscode.languages.registerHoverProvider(
            { language: "python" },
            {
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
            },
        ),
    );
}

export async function deactivate(): Promise<void> {
    await client?.stop();
    client = undefined;
}
