/* @ts-self-types="./lowpd_wasm.d.ts" */

export class Bound {
    static __wrap(ptr) {
        const obj = Object.create(Bound.prototype);
        obj.__wbg_ptr = ptr;
        BoundFinalization.register(obj, obj.__wbg_ptr, obj);
        return obj;
    }
    __destroy_into_raw() {
        const ptr = this.__wbg_ptr;
        this.__wbg_ptr = 0;
        BoundFinalization.unregister(this);
        return ptr;
    }
    free() {
        const ptr = this.__destroy_into_raw();
        wasm.__wbg_bound_free(ptr, 0);
    }
    /**
     * Bound as a probability.
     * @returns {number}
     */
    get p_upper() {
        const ret = wasm.__wbg_get_bound_p_upper(this.__wbg_ptr);
        return ret;
    }
    /**
     * Bound in percent, rounded to two decimals.
     * @returns {number}
     */
    get percent() {
        const ret = wasm.__wbg_get_bound_percent(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get residual() {
        const ret = wasm.__wbg_get_bound_residual(this.__wbg_ptr);
        return ret;
    }
    /**
     * `k = n`: the bound is 1.
     * @returns {boolean}
     */
    get vacuous() {
        const ret = wasm.__wbg_get_bound_vacuous(this.__wbg_ptr);
        return ret !== 0;
    }
    /**
     * Bound as a probability.
     * @param {number} arg0
     */
    set p_upper(arg0) {
        wasm.__wbg_set_bound_p_upper(this.__wbg_ptr, arg0);
    }
    /**
     * Bound in percent, rounded to two decimals.
     * @param {number} arg0
     */
    set percent(arg0) {
        wasm.__wbg_set_bound_percent(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set residual(arg0) {
        wasm.__wbg_set_bound_residual(this.__wbg_ptr, arg0);
    }
    /**
     * `k = n`: the bound is 1.
     * @param {boolean} arg0
     */
    set vacuous(arg0) {
        wasm.__wbg_set_bound_vacuous(this.__wbg_ptr, arg0);
    }
}
if (Symbol.dispose) Bound.prototype[Symbol.dispose] = Bound.prototype.free;

/**
 * Density of `F_{a,b,rho}` at `points` equally spaced nodes of `[from, to]`.
 * @param {number} a
 * @param {number} b
 * @param {number} rho
 * @param {number} from
 * @param {number} to
 * @param {number} points
 * @returns {Float64Array}
 */
export function fDensity(a, b, rho, from, to, points) {
    const ret = wasm.fDensity(a, b, rho, from, to, points);
    if (ret[3]) {
        throw takeFromExternrefTable0(ret[2]);
    }
    var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
    wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
    return v1;
}

/**
 * Quantile of `F_{a,b,rho}`.
 * @param {number} prob
 * @param {number} a
 * @param {number} b
 * @param {number} rho
 * @returns {number}
 */
export function fQuantile(prob, a, b, rho) {
    const ret = wasm.fQuantile(prob, a, b, rho);
    if (ret[2]) {
        throw takeFromExternrefTable0(ret[1]);
    }
    return ret[0];
}

/**
 * Upper PD bound at confidence `gamma`; independent obligors when `rho` is
 * absent.
 * @param {number} n
 * @param {number} k
 * @param {number} gamma
 * @param {number | null} [rho]
 * @returns {Bound}
 */
export function pdBound(n, k, gamma, rho) {
    const ret = wasm.pdBound(n, k, gamma, !isLikeNone(rho), isLikeNone(rho) ? 0 : rho);
    if (ret[2]) {
        throw takeFromExternrefTable0(ret[1]);
    }
    return Bound.__wrap(ret[0]);
}

/**
 * Density of the Vasicek distribution at `points` equally spaced nodes of
 * `[0, 1]`.
 * @param {number} p
 * @param {number} rho
 * @param {number} points
 * @returns {Float64Array}
 */
export function vasicekDensity(p, rho, points) {
    const ret = wasm.vasicekDensity(p, rho, points);
    if (ret[3]) {
        throw takeFromExternrefTable0(ret[2]);
    }
    var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
    wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
    return v1;
}
function __wbg_get_imports() {
    const import0 = {
        __proto__: null,
        __wbg_Error_30c8987f7c2ed4e2: function(arg0, arg1) {
            const ret = Error(getStringFromWasm0(arg0, arg1));
            return ret;
        },
        __wbg___wbindgen_throw_41e9ee4f547fc59a: function(arg0, arg1) {
            throw new Error(getStringFromWasm0(arg0, arg1));
        },
        __wbindgen_init_externref_table: function() {
            const table = wasm.__wbindgen_externrefs;
            const offset = table.grow(4);
            table.set(0, undefined);
            table.set(offset + 0, undefined);
            table.set(offset + 1, null);
            table.set(offset + 2, true);
            table.set(offset + 3, false);
        },
    };
    return {
        __proto__: null,
        "./lowpd_wasm_bg.js": import0,
    };
}

const BoundFinalization = (typeof FinalizationRegistry === 'undefined')
    ? { register: () => {}, unregister: () => {} }
    : new FinalizationRegistry(ptr => wasm.__wbg_bound_free(ptr, 1));

function getArrayF64FromWasm0(ptr, len) {
    ptr = ptr >>> 0;
    return getFloat64ArrayMemory0().subarray(ptr / 8, ptr / 8 + len);
}

let cachedFloat64ArrayMemory0 = null;
function getFloat64ArrayMemory0() {
    if (cachedFloat64ArrayMemory0 === null || cachedFloat64ArrayMemory0.byteLength === 0) {
        cachedFloat64ArrayMemory0 = new Float64Array(wasm.memory.buffer);
    }
    return cachedFloat64ArrayMemory0;
}

function getStringFromWasm0(ptr, len) {
    return decodeText(ptr >>> 0, len);
}

let cachedUint8ArrayMemory0 = null;
function getUint8ArrayMemory0() {
    if (cachedUint8ArrayMemory0 === null || cachedUint8ArrayMemory0.byteLength === 0) {
        cachedUint8ArrayMemory0 = new Uint8Array(wasm.memory.buffer);
    }
    return cachedUint8ArrayMemory0;
}

function isLikeNone(x) {
    return x === undefined || x === null;
}

function takeFromExternrefTable0(idx) {
    const value = wasm.__wbindgen_externrefs.get(idx);
    wasm.__externref_table_dealloc(idx);
    return value;
}

let cachedTextDecoder = new TextDecoder('utf-8', { ignoreBOM: true, fatal: true });
cachedTextDecoder.decode();
const MAX_SAFARI_DECODE_BYTES = 2146435072;
let numBytesDecoded = 0;
function decodeText(ptr, len) {
    numBytesDecoded += len;
    if (numBytesDecoded >= MAX_SAFARI_DECODE_BYTES) {
        cachedTextDecoder = new TextDecoder('utf-8', { ignoreBOM: true, fatal: true });
        cachedTextDecoder.decode();
        numBytesDecoded = len;
    }
    return cachedTextDecoder.decode(getUint8ArrayMemory0().subarray(ptr, ptr + len));
}

let wasmModule, wasmInstance, wasm;
function __wbg_finalize_init(instance, module) {
    wasmInstance = instance;
    wasm = instance.exports;
    wasmModule = module;
    cachedFloat64ArrayMemory0 = null;
    cachedUint8ArrayMemory0 = null;
    wasm.__wbindgen_start();
    return wasm;
}

async function __wbg_load(module, imports) {
    if (typeof Response === 'function' && module instanceof Response) {
        if (!module.ok) {
            throw new Error(`failed to fetch Wasm: ${module.status} ${module.statusText} fetching '${module.url}'`);
        }

        if (typeof WebAssembly.instantiateStreaming === 'function') {
            try {
                return await WebAssembly.instantiateStreaming(module, imports);
            } catch (e) {
                const validResponse = expectedResponseType(module.type);

                if (validResponse && module.headers.get('Content-Type') !== 'application/wasm') {
                    console.warn("`WebAssembly.instantiateStreaming` failed because your server does not serve Wasm with `application/wasm` MIME type. Falling back to `WebAssembly.instantiate` which is slower. Original error:\n", e);

                } else { throw e; }
            }
        }

        const bytes = await module.arrayBuffer();
        return await WebAssembly.instantiate(bytes, imports);
    } else {
        const instance = await WebAssembly.instantiate(module, imports);

        if (instance instanceof WebAssembly.Instance) {
            return { instance, module };
        } else {
            return instance;
        }
    }

    function expectedResponseType(type) {
        switch (type) {
            case 'basic': case 'cors': case 'default': return true;
        }
        return false;
    }
}

function initSync(module) {
    if (wasm !== undefined) return wasm;


    if (module !== undefined) {
        if (Object.getPrototypeOf(module) === Object.prototype) {
            ({module} = module)
        } else {
            console.warn('using deprecated parameters for `initSync()`; pass a single object instead')
        }
    }

    const imports = __wbg_get_imports();
    if (!(module instanceof WebAssembly.Module)) {
        module = new WebAssembly.Module(module);
    }
    const instance = new WebAssembly.Instance(module, imports);
    return __wbg_finalize_init(instance, module);
}

async function __wbg_init(module_or_path) {
    if (wasm !== undefined) return wasm;


    if (module_or_path !== undefined) {
        if (Object.getPrototypeOf(module_or_path) === Object.prototype) {
            ({module_or_path} = module_or_path)
        } else {
            console.warn('using deprecated parameters for the initialization function; pass a single object instead')
        }
    }

    if (module_or_path === undefined) {
        module_or_path = new URL('lowpd_wasm_bg.wasm', import.meta.url);
    }
    const imports = __wbg_get_imports();

    if (typeof module_or_path === 'string' || (typeof Request === 'function' && module_or_path instanceof Request) || (typeof URL === 'function' && module_or_path instanceof URL)) {
        module_or_path = fetch(module_or_path);
    }

    const { instance, module } = await __wbg_load(await module_or_path, imports);

    return __wbg_finalize_init(instance, module);
}

export { initSync, __wbg_init as default };
