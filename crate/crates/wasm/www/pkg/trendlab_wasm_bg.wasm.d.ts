/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_sizeview_free: (a: number, b: number) => void;
export const oracle_check: (a: number, b: number, c: number) => [number, number, number, number];
export const simulate_rg: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
export const simulate_urn: (a: number, b: number, c: number) => [number, number, number];
export const sizeview_alpha_hat: (a: number) => number;
export const sizeview_count: (a: number) => number;
export const sizeview_fractions: (a: number) => [number, number];
export const sizeview_largest_fraction: (a: number) => number;
export const sizeview_predicted: (a: number) => number;
export const sizeview_sizes: (a: number) => [number, number];
export const sizeview_yule: (a: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
