/** REST calls: session create/info, snapshots, clustering, asset storage. */

export interface SnapshotItem {
  seq: number;
  author_id: string;
  client_msg_id: string;
  kind: string;
  body: string;
  received_at: number;
  tags: string[];
  votes: Record<string, number>;
  cluster: string | null;
  pos: [number, number] | null;
}

export interface SnapshotDoc {
  code: string;
  phase: string;
  items: SnapshotItem[];
  [key: string]: unknown;
}

export interface ClusterGroup {
  cluster_id: string;
  representative_seq: number;
  member_seqs: number[];
}

export class ApiError extends Error {
  readonly status: number;

  constructor(status: number, detail: string) {
    super(`HTTP ${status}: ${detail}`);
    this.status = status;
  }
}

async function getJson<T>(url: string): Promise<T> {
  const resp = await fetch(url);
  if (!resp.ok) {
    throw new ApiError(resp.status, await resp.text());
  }
  return (await resp.json()) as T;
}

export async function createSession(baseUrl: string): Promise<string> {
  const resp = await fetch(`${baseUrl}/v1/sessions`, { method: "POST" });
  if (!resp.ok) {
    throw new ApiError(resp.status, await resp.text());
  }
  const doc = (await resp.json()) as { code: string };
  return doc.code;
}

export async function sessionExists(baseUrl: string, code: string): Promise<boolean> {
  const resp = await fetch(`${baseUrl}/v1/sessions/${code}`);
  return resp.ok;
}

export function fetchSnapshot(baseUrl: string, code: string): Promise<SnapshotDoc> {
  return getJson(`${baseUrl}/v1/sessions/${code}/snapshot`);
}

export async function fetchClusters(
  baseUrl: string,
  code: string,
  threshold: number,
): Promise<ClusterGroup[]> {
  const doc = await getJson<{ clusters: ClusterGroup[] }>(
    `${baseUrl}/v1/sessions/${code}/clusters?threshold=${threshold}`,
  );
  return doc.clusters;
}

/** Upload picked image bytes; returns the content-address to contribute. */
export async function uploadAsset(
  baseUrl: string,
  code: string,
  bytes: ArrayBuffer | Uint8Array,
): Promise<string> {
  const resp = await fetch(`${baseUrl}/v1/sessions/${code}/assets`, {
    method: "POST",
    headers: { "content-type": "application/octet-stream" },
    body: bytes as BodyInit,
  });
  if (!resp.ok) {
    throw new ApiError(resp.status, await resp.text());
  }
  const doc = (await resp.json()) as { ref: string };
  return doc.ref;
}

export function assetUrl(baseUrl: string, ref: string): string {
  return `${baseUrl}/v1/assets/${ref}`;
}
