import { defineConfig } from "vite";

// Dev-only proxy to a locally running `lineage serve` (default port).
export default defineConfig({
  server: {
    proxy: {
      "/api": "http://127.0.0.1:8321",
    },
  },
});
