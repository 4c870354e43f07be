/** Shared test helpers: fixture loading and a recording fetch stub. */

import { readFileSync } from "node:fs";

import type { FetchLike } from "../src/api.js";

export function loadFixture<T>(name: string): T {
  const url = new URL(`./fixtures/${name}`, import.meta.url);
  return JSON.parse(readFileSync(url, "utf8")) as T;
}

export function jsonResponse(doc: unknown, status = 200): Response {
  return new Response(JSON.stringify(doc), {
    status,
    headers: { "content-type": "application/json" },
  });
}

export interface RecordedCall {
  url: string;
  method: string;
  body: unknown;
}

export interface FetchStub {
  fetchImpl: FetchLike;
  calls: RecordedCall[];
}

/** Wrap a routing function so every request is recorded before dispatch. */
export function recordingFetch(route: (call: RecordedCall) => Response): FetchStub {
  const calls: RecordedCall[] = [];
  const fetchImpl: FetchLike = (url, init) => {
    const call: RecordedCall = {
      url,
      method: init?.method ?? "GET",
      body: typeof init?.body === "string" ? JSON.parse(init.body) : null,
    };
    calls.push(call);
    return Promise.resolve(route(call));
  };
  return { fetchImpl, calls };
}
