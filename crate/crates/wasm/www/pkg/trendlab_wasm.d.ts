/* tslint:disable */
/* eslint-disable */

/**
 * Size distribution of one run, ready for a log-log plot.
 */
export class SizeView {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * NaN when the estimator is undefined for this sample.
     */
    readonly alpha_hat: number;
    /**
     * Number of components (or bins).
     */
    readonly count: number;
    /**
     * Empirical fraction of each size (LCC excluded when it was fitted so).
     */
    readonly fractions: Float64Array;
    readonly largest_fraction: number;
    /**
     * NaN when no finite prediction exists.
     */
    readonly predicted: number;
    readonly sizes: Float64Array;
    /**
     * Yule pmf at `sizes` for the predicted exponent; empty if undefined.
     */
    readonly yule: Float64Array;
}

/**
 * Exact total-variation distance between the RG (p = 1) and urn laws for
 * `t = 1..=t_max`, one `t<TAB>distance` line each. `lambda` accepts
 * `1/3`, `0.25` or `2`.
 */
export function oracle_check(lambda: string, t_max: number): string;

/**
 * Runs the retweet-graph model and returns its component-size view. The
 * LCC is excluded from the fit when `p < 1`.
 */
export function simulate_rg(lambda: number, p: number, q: number, steps: number, seed: number): SizeView;

/**
 * Runs the Polya urn with `γ = 1` and returns its bin-size view.
 */
export function simulate_urn(p_bar: number, steps: number, seed: number): SizeView;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_sizeview_free: (a: number, b: number) => void;
    readonly oracle_check: (a: number, b: number, c: number) => [number, number, number, number];
    readonly simulate_rg: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
    readonly simulate_urn: (a: number, b: number, c: number) => [number, number, number];
    readonly sizeview_alpha_hat: (a: number) => number;
    readonly sizeview_count: (a: number) => number;
    readonly sizeview_fractions: (a: number) => [number, number];
    readonly sizeview_largest_fraction: (a: number) => number;
    readonly sizeview_predicted: (a: number) => number;
    readonly sizeview_sizes: (a: number) => [number, number];
    readonly sizeview_yule: (a: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
