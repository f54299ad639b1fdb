import { initApp } from "./main";
import "./style.css";

const root = document.getElementById("app");
if (root) {
    initApp(root).catch((err) => {
        root.textContent = `failed to start: ${err}`;
    });
}
