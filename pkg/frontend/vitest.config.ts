import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    environment: "happy-dom",
    // The contract suite talks to a real local service from a DOM context.
    environmentOptions: {
      happyDOM: { settings: { fetch: { disableSameOriginPolicy: true } } },
    },
    include: ["tests/**/*.test.ts"],
    globalSetup: "tests/globalSetup.ts",
    testTimeout: 60_000,
    hookTimeout: 60_000,
  },
});
