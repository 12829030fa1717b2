// Minimal declaration of the VS Code API surface this extension touches.
// The real module is provided by the editor at runtime; this keeps the
// build self-contained when @types/vscode is unavailable.

declare module "vscode" {
    export interface Disposable {
        dispose(): void;
    }

    export class Position {
        constructor(line: number, character: number);
        readonly line: number;
        readonly character: number;
    }

    export class Range {
        constructor(start: Position, end: Position);
        readonly start: Position;
        readonly end: Position;
    }

    export enum DiagnosticSeverity {
        Error = 0,
        Warning = 1,
        Information = 2,
        Hint = 3,
    }

    export class Diagnostic {
        constructor(range: Range, message: string, severity?: DiagnosticSeverity);
        source?: string;
    }

    export interface Uri {
        toString(): string;
        readonly fsPath: string;
    }

    export interface TextDocument {
        readonly uri: Uri;
        readonly languageId: string;
        getText(): string;
    }

    export interface TextEditor {
        readonly document: TextDocument;
        setDecorations(type: TextEditorDecorationType, ranges: Range[]): void;
    }

    export interface TextEditorDecorationType extends Disposable {}

    export interface DiagnosticCollection extends Disposable {
        set(uri: Uri, diagnostics: Diagnostic[] | undefined): void;
        delete(uri: Uri): void;
    }

    export class Hover {
        constructor(contents: string, range?: Range);
    }

    export interface HoverProvider {
        provideHover(
            document: TextDocument,
            position: Position,
        ): Hover | null | Promise<Hover | null>;
    }

    export interface ExtensionContext {
        subscriptions: Disposable[];
    }

    export interface WorkspaceConfiguration {
        get<T>(section: string, defaultValue: T): T;
    }

    export interface TextDocumentChangeEvent {
        readonly document: TextDocument;
    }

    export const languages: {
        createDiagnosticCollection(name: string): DiagnosticCollection;
        registerHoverProvider(selector: unknown, provider: HoverProvider): Disposable;
    };

    export const window: {
        showErrorMessage(message: string): void;
        visibleTextEditors: readonly TextEditor[];
        createTextEditorDecorationType(options: unknown): TextEditorDecorationType;
        onDidChangeVisibleTextEditors(
            listener: (editors: readonly TextEditor[]) => void,
        ): Disposable;
    };

    export const workspace: {
        getConfiguration(section: string): WorkspaceConfiguration;
        textDocuments: readonly TextDocument[];
        onDidOpenTextDocument(listener: (doc: TextDocument) => void): Disposable;
        onDidChangeTextDocument(listener: (e: TextDocumentChangeEvent) => void): Disposable;
        onDidCloseTextDocument(listener: (doc: TextDocument) => void): Disposable;
    };
}
