import { StudentApi } from "./api.js";
import { initApp, studentIdFromStorage } from "./app.js";

declare global {
  interface Window {
    BUGSPOTTER_API?: string;
  }
}

const params = new URLSearchParams(window.location.search);
const baseUrl = params.get("api") ?? window.BUGSPOTTER_API ?? "";
const api = new StudentApi(baseUrl, studentIdFromStorage(window.localStorage));

initApp(document.getElementById("app")!, {
  api,
  problemId: params.get("problem") ?? undefined,
  revealOutputs: params.get("reveal") === "1",
});
