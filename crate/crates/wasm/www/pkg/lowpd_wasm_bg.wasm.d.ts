/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_bound_free: (a: number, b: number) => void;
export const __wbg_get_bound_p_upper: (a: number) => number;
export const __wbg_get_bound_percent: (a: number) => number;
export const __wbg_get_bound_residual: (a: number) => number;
export const __wbg_get_bound_vacuous: (a: number) => number;
export const __wbg_set_bound_p_upper: (a: number, b: number) => void;
export const __wbg_set_bound_percent: (a: number, b: number) => void;
export const __wbg_set_bound_residual: (a: number, b: number) => void;
export const __wbg_set_bound_vacuous: (a: number, b: number) => void;
export const fDensity: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
export const fQuantile: (a: number, b: number, c: number, d: number) => [number, number, number];
export const pdBound: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
export const vasicekDensity: (a: number, b: number, c: number) => [number, number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
