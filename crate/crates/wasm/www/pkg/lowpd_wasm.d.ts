/* tslint:disable */
/* eslint-disable */

export class Bound {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Bound as a probability.
     */
    p_upper: number;
    /**
     * Bound in percent, rounded to two decimals.
     */
    percent: number;
    residual: number;
    /**
     * `k = n`: the bound is 1.
     */
    vacuous: boolean;
}

/**
 * Density of `F_{a,b,rho}` at `points` equally spaced nodes of `[from, to]`.
 */
export function fDensity(a: number, b: number, rho: number, from: number, to: number, points: number): Float64Array;

/**
 * Quantile of `F_{a,b,rho}`.
 */
export function fQuantile(prob: number, a: number, b: number, rho: number): number;

/**
 * Upper PD bound at confidence `gamma`; independent obligors when `rho` is
 * absent.
 */
export function pdBound(n: number, k: number, gamma: number, rho?: number | null): Bound;

/**
 * Density of the Vasicek distribution at `points` equally spaced nodes of
 * `[0, 1]`.
 */
export function vasicekDensity(p: number, rho: number, points: number): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_bound_free: (a: number, b: number) => void;
    readonly __wbg_get_bound_p_upper: (a: number) => number;
    readonly __wbg_get_bound_percent: (a: number) => number;
    readonly __wbg_get_bound_residual: (a: number) => number;
    readonly __wbg_get_bound_vacuous: (a: number) => number;
    readonly __wbg_set_bound_p_upper: (a: number, b: number) => void;
    readonly __wbg_set_bound_percent: (a: number, b: number) => void;
    readonly __wbg_set_bound_residual: (a: number, b: number) => void;
    readonly __wbg_set_bound_vacuous: (a: number, b: number) => void;
    readonly fDensity: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
    readonly fQuantile: (a: number, b: number, c: number, d: number) => [number, number, number];
    readonly pdBound: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
    readonly vasicekDensity: (a: number, b: number, c: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
