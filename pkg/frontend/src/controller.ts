// Editor-agnostic glue between the language client and the editor surface.
// All analysis happens in the server; this layer only renders what it sends.

import { ClientConfig, LspStdioClient } from "./lspClient";
import {
    Diagnostic,
    DiagnosticSeverity,
    Hover,
    Position,
    PublishDiagnosticsParams,
    Range,
} from "./protocol";

/** The slice of editor behavior the extension uses; mockable in tests. */
export interface EditorSurface {
    /** Render squiggles for a document. */
    setDiagnostics(uri: string, diagnostics: Diagnostic[]): void;
    /** Render the background highlight decoration on the given ranges. */
    setDecorations(uri: string, ranges: Range[]): void;
    showError(message: string): void;
}

export class ExtensionController {
    private readonly published = new Map<string, Diagnostic[]>();

    constructor(
        private readonly client: LspStdioClient,
        private readonly surface: EditorSurface,
        private readonly config: ClientConfig,
    ) {
        client.onDiagnostics((params) => this.render(params));
    }

    private visible(diagnostics: Diagnostic[]): Diagnostic[] {
        if (this.config.enableApproximate) {
            return diagnostics;
        }
        return diagnostics.filter((d) => d.severity !== DiagnosticSeverity.Information);
    }

    private render(params: PublishDiagnosticsParams): void {
        this.published.set(params.uri, params.diagnostics);
        const shown = this.visible(params.diagnostics);
        this.surface.setDiagnostics(params.uri, shown);
        // background decoration only on exact matches
        const exact = shown.filter((d) => d.severity === DiagnosticSeverity.Warning);
        this.surface.setDecorations(params.uri, exact.map((d) => d.range));
    }

    /** Ranges currently decorated for a document. */
    decoratedRanges(uri: string): Range[] {
        const diags = this.visible(this.published.get(uri) ?? []);
        return diags
            .filter((d) => d.severity === DiagnosticSeverity.Warning)
            .map((d) => d.range);
    }

    hover(uri: string, position: Position): Promise<Hover | null> {
        return this.client.hover(uri, position);
    }
}
