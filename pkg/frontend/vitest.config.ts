import { defineConfig } from "vitest/config";

export default defineConfig({
    test: {
        environment: "jsdom",
        include: ["tests/**/*.test.ts"],
        // the round-trip suite boots the Python service, which takes a while
        testTimeout: 20000,
        hookTimeout: 120000,
    },
});
