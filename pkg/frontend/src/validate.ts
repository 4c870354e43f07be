/** Client-side pre-validation of an edit batch. Mirrors the server's own
 * rejection rules closely enough to keep obviously broken batches from being
 * submitted; the server remains the authority. Context existence is tracked
 * through the batch, so an edit may refer to contexts created by earlier
 * edits in the same batch.
 */

import type { EditOp } from "./types.js";

export interface EditInventory {
  contexts: readonly string[];
  /** Known package ids; when omitted, package references are not checked. */
  packages?: readonly string[];
  /** Known class ids; when omitted, class references are not checked. */
  classes?: readonly string[];
}

const OP_SHAPES: Record<string, readonly string[]> = {
  move_package: ["op", "package", "context"],
  mark_async: ["op", "from", "to"],
  merge: ["op", "a", "b", "new_id"],
  divide: ["op", "context", "assign"],
  duplicate: ["op", "package", "targets"],
  split_package: ["op", "package", "assign"],
  extract: ["op", "new_context", "classes"],
};

function isStringRecord(value: unknown): value is Record<string, string> {
  return (
    typeof value === "object" &&
    value !== null &&
    !Array.isArray(value) &&
    Object.values(value).every((v) => typeof v === "string")
  );
}

function shapeIssue(raw: unknown, index: number): string | null {
  if (typeof raw !== "object" || raw === null || Array.isArray(raw)) {
    return `edit ${index}: must be an object`;
  }
  const record = raw as Record<string, unknown>;
  const op = record.op;
  if (typeof op !== "string" || !(op in OP_SHAPES)) {
    return `edit ${index}: unknown op ${JSON.stringify(op)}`;
  }
  const expected = OP_SHAPES[op];
  const keys = Object.keys(record).sort();
  if (keys.join(",") !== [...expected].sort().join(",")) {
    return `edit ${index} (${op}): must have exactly keys ${[...expected].sort().join(", ")}`;
  }
  for (const key of expected) {
    const value = record[key];
    if (key === "assign" && !isStringRecord(value)) {
      return `edit ${index} (${op}): assign must map class ids to context ids`;
    }
    if (
      (key === "targets" || key === "classes") &&
      !(Array.isArray(value) && value.every((v) => typeof v === "string"))
    ) {
      return `edit ${index} (${op}): ${key} must be a list of strings`;
    }
    if (!["assign", "targets", "classes"].includes(key) && typeof value !== "string") {
      return `edit ${index} (${op}): ${key} must be a string`;
    }
  }
  return null;
}

/** Parse user-entered batch text: either a JSON list of ops or an object with
 * an "edits" list. Malformed entries are reported and dropped.
 */
export function parseEditBatchText(text: string): { edits: EditOp[]; errors: string[] } {
  let doc: unknown;
  try {
    doc = JSON.parse(text) as unknown;
  } catch (exc) {
    return { edits: [], errors: [`invalid JSON: ${(exc as Error).message}`] };
  }
  let items: unknown[];
  if (Array.isArray(doc)) {
    items = doc;
  } else if (typeof doc === "object" && doc !== null && Array.isArray((doc as { edits?: unknown }).edits)) {
    items = (doc as { edits: unknown[] }).edits;
  } else {
    return { edits: [], errors: ['batch must be a JSON list of edits or {"edits": [...]}'] };
  }
  const edits: EditOp[] = [];
  const errors: string[] = [];
  items.forEach((raw, index) => {
    const issue = shapeIssue(raw, index);
    if (issue !== null) {
      errors.push(issue);
    } else {
      edits.push(raw as EditOp);
    }
  });
  return { edits, errors };
}

export function validateEditBatch(edits: readonly EditOp[], inventory: EditInventory): string[] {
  const issues: string[] = [];
  const contexts = new Set(inventory.contexts);
  const packages = inventory.packages === undefined ? null : new Set(inventory.packages);
  const classes = inventory.classes === undefined ? null : new Set(inventory.classes);

  edits.forEach((edit, index) => {
    const flag = (message: string) => issues.push(`edit ${index} (${edit.op}): ${message}`);
    const needContext = (ctx: string) => {
      if (!contexts.has(ctx)) {
        flag(`unknown context "${ctx}"`);
        return false;
      }
      return true;
    };
    const needPackage = (pkg: string) => {
      if (packages !== null && !packages.has(pkg)) {
        flag(`unknown package "${pkg}"`);
      }
    };
    const needClass = (cls: string) => {
      if (classes !== null && !classes.has(cls)) {
        flag(`unknown class "${cls}"`);
      }
    };

    switch (edit.op) {
      case "move_package":
        needPackage(edit.package);
        needContext(edit.context);
        break;
      case "mark_async":
        needContext(edit.from);
        needContext(edit.to);
        if (edit.from === edit.to) {
          flag("async pair must cross contexts");
        }
        break;
      case "merge": {
        const haveA = needContext(edit.a);
        const haveB = needContext(edit.b);
        if (edit.a === edit.b) {
          flag("requires two distinct contexts");
        }
        if (contexts.has(edit.new_id) && edit.new_id !== edit.a && edit.new_id !== edit.b) {
          flag(`target "${edit.new_id}" already exists`);
        }
        if (haveA && haveB && edit.a !== edit.b) {
          contexts.delete(edit.a);
          contexts.delete(edit.b);
          contexts.add(edit.new_id);
        }
        break;
      }
      case "divide": {
        const known = needContext(edit.context);
        for (const cls of Object.keys(edit.assign)) {
          needClass(cls);
        }
        const targets = new Set(Object.values(edit.assign));
        if (targets.size !== 2) {
          flag("requires exactly two target contexts");
        }
        if (known) {
          contexts.delete(edit.context);
          for (const target of targets) {
            contexts.add(target);
          }
        }
        break;
      }
      case "duplicate":
        needPackage(edit.package);
        for (const target of edit.targets) {
          needContext(target);
        }
        break;
      case "split_package":
        needPackage(edit.package);
        for (const cls of Object.keys(edit.assign)) {
          needClass(cls);
        }
        for (const target of Object.values(edit.assign)) {
          contexts.add(target);
        }
        break;
      case "extract":
        if (edit.classes.length === 0) {
          flag("requires at least one class");
        }
        for (const cls of edit.classes) {
          needClass(cls);
        }
        contexts.add(edit.new_context);
        break;
    }
  });
  return issues;
}
