import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    environment: "happy-dom",
    environmentOptions: {
      happyDOM: {
        // Clone iframes point at the range server; tests drive the
        // capture flow explicitly instead of letting the DOM fetch it.
        settings: { disableIframePageLoading: true },
      },
    },
    include: ["tests/**/*.test.ts"],
    // The e2e file boots a real server; give it room.
    testTimeout: 30000,
    hookTimeout: 30000,
  },
});
