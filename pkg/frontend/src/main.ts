import { ApiClient } from "./api.js";
import { App } from "./app.js";

const root = document.getElementById("app");
if (!root) throw new Error("missing #app container");

// Served by the screening service itself, so the API shares our origin.
const app = new App(root, new ApiClient(""));
void app.init();
