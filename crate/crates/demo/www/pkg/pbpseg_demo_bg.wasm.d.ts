/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_segmentation_free: (a: number, b: number) => void;
export const primitivesImage: (a: number, b: number) => [number, number];
export const reduceMatrix: (a: number, b: number) => [number, number, number, number];
export const segmentImage: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number) => [number, number, number];
export const segmentation_degrees: (a: number) => [number, number];
export const segmentation_edge_percent: (a: number) => number;
export const segmentation_grid_cols: (a: number) => number;
export const segmentation_grid_rows: (a: number) => number;
export const segmentation_groups: (a: number) => number;
export const segmentation_mask: (a: number) => [number, number];
export const segmentation_overlay: (a: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_start: () => void;
