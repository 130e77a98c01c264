/**
 * Minimal ambient declarations for the node builtins the tests touch,
 * keeping the build free of a @types/node dependency.
 */

declare module 'node:test' {
  interface TestContext {
    diagnostic(message: string): void;
  }
  type TestFn = (t: TestContext) => void | Promise<void>;
  export function test(name: string, fn: TestFn): Promise<void>;
  export function before(fn: () => void | Promise<void>): void;
  export function after(fn: () => void | Promise<void>): void;
}

declare module 'node:assert/strict' {
  interface Assert {
    (value: unknown, message?: string): void;
    equal(actual: unknown, expected: unknown, message?: string): void;
    notEqual(actual: unknown, expected: unknown, message?: string): void;
    deepEqual(actual: unknown, expected: unknown, message?: string): void;
    ok(value: unknown, message?: string): void;
    match(value: string, pattern: RegExp, message?: string): void;
    fail(message?: string): never;
    rejects(block: Promise<unknown> | (() => Promise<unknown>),
            error?: unknown, message?: string): Promise<void>;
  }
  const assert: Assert;
  export default assert;
}

declare module 'node:child_process' {
  export interface ChildProcess {
    stdout: { on(event: 'data', cb: (chunk: Uint8Array) => void): void };
    stderr: { on(event: 'data', cb: (chunk: Uint8Array) => void): void };
    kill(signal?: string): void;
    on(event: string, cb: (...args: unknown[]) => void): void;
  }
  export function spawn(command: string, args: string[],
                        options?: { cwd?: string }): ChildProcess;
  export function execFileSync(command: string, args: string[],
                               options?: { cwd?: string }): Uint8Array;
}

declare module 'node:fs' {
  export function readFileSync(path: string, encoding: 'utf-8'): string;
  export function mkdtempSync(prefix: string): string;
  export function rmSync(path: string, options?: { recursive?: boolean;
                                                   force?: boolean }): void;
}

declare module 'node:os' {
  export function tmpdir(): string;
}

declare module 'node:path' {
  export function join(...parts: string[]): string;
}

declare const process: {
  env: Record<string, string | undefined>;
  platform: string;
};
