"use strict";
// Editor-agnostic glue between the language client and the editor surface.
// All analysis happens in the server; this layer only renders what it sends.
Object.defineProperty(exports, "__esModule", { value: true });
exports.ExtensionController = void 0;
class ExtensionController {
    client;
    surface;
    config;
    published = new Map();
    constructor(client, surface, config) {
        this.client = client;
        this.surface = surface;
        this.config = config;
        client.onDiagnostics((params) => this.render(params));
    }
    visible(diagnostics) {
        if (this.config.enableApproximate) {
            return diagnostics;
        }
        return diagnostics.filter((d) => d.severity !== 3 /* DiagnosticSeverity.Information */);
    }
    render(params) {
        this.published.set(params.uri, params.diagnostics);
        const shown = this.visible(params.diagnostics);
        this.surface.setDiagnostics(params.uri, shown);
        // background decoration only on exact matches
        const exact = shown.filter((d) => d.severity === 2 /* DiagnosticSeverity.Warning */);
        this.surface.setDecorations(params.uri, exact.map((d) => d.range));
    }
    /** Ranges currently decorated for a document. */
    decoratedRanges(uri) {
        const diags = this.visible(this.published.get(uri) ?? []);
        return diags
            .filter((d) => d.severity === 2 /* DiagnosticSeverity.Warning */)
            .map((d) => d.range);
    }
    hover(uri, position) {
        return this.client.hover(uri, position);
    }
}
exports.ExtensionController = ExtensionController;
//# sourceMappingURL=controller.js.map