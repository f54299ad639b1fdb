/// <reference types="vitest" />
import { defineConfig } from "vitest/config";

// base "./" keeps built asset URLs relative so the bundle works when the
// API service mounts it under /ui/.
export default defineConfig({
    base: "./",
    server: {
        port: 5173,
        proxy: {
            "/api": "http://127.0.0.1:8008",
            "/assets": "http://127.0.0.1:8008",
            "/media": "http://127.0.0.1:8008",
        },
    },
    build: {
        outDir: "dist",
    },
    test: {
        environment: "jsdom",
    },
});
