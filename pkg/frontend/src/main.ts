import { createApiClient } from "./api.js";
import { createApp } from "./app.js";

const root = document.getElementById("app");
if (root) {
  // Same-origin deployment: the service hosts these assets itself.
  createApp(root, createApiClient(""));
}
