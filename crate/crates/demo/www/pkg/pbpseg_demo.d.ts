/* tslint:disable */
/* eslint-disable */

export class Segmentation {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Effective degree per patch in raster order.
     */
    degrees(): Uint8Array;
    /**
     * Mask as RGBA, at input resolution.
     */
    mask(): Uint8Array;
    overlay(): Uint8Array;
    readonly edge_percent: number;
    readonly grid_cols: number;
    readonly grid_rows: number;
    readonly groups: number;
}

export function primitivesImage(width: number, height: number): Uint8Array;

export function reduceMatrix(text: string): string;

export function segmentImage(rgba: Uint8Array, width: number, height: number, patch: number, bin_width: number, gaussian: number, threshold: number, refine: boolean): Segmentation;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_segmentation_free: (a: number, b: number) => void;
    readonly primitivesImage: (a: number, b: number) => [number, number];
    readonly reduceMatrix: (a: number, b: number) => [number, number, number, number];
    readonly segmentImage: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number) => [number, number, number];
    readonly segmentation_degrees: (a: number) => [number, number];
    readonly segmentation_edge_percent: (a: number) => number;
    readonly segmentation_grid_cols: (a: number) => number;
    readonly segmentation_grid_rows: (a: number) => number;
    readonly segmentation_groups: (a: number) => number;
    readonly segmentation_mask: (a: number) => [number, number];
    readonly segmentation_overlay: (a: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
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
