import { initApp } from "./app.js";

// Same-origin by default (the service can serve these assets); override
// with ?api=http://host:port for development against a separate service.
const params = new URLSearchParams(window.location.search);
const baseUrl = params.get("api") ?? "";

initApp(document.getElementById("app")!, baseUrl);
