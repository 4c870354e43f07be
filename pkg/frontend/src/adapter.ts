/** Thin three.js adapter: turns a scene spec into a Group with one child per
 * box (Mesh) and one per edge (Line). All geometry decisions live in the
 * projection module; this file only instantiates three objects.
 */

import * as THREE from "three";

import { EDGE_COLOR, type SceneSpec } from "./scene.js";

export function buildSceneGraph(spec: SceneSpec): THREE.Group {
  const group = new THREE.Group();
  group.name = `window-${spec.windowStartUs}`;
  for (const box of spec.boxes) {
    const geometry = new THREE.BoxGeometry(box.size[0], box.size[1], box.size[2]);
    const material = new THREE.MeshLambertMaterial({ color: new THREE.Color(box.color) });
    const mesh = new THREE.Mesh(geometry, material);
    mesh.position.set(box.center[0], box.center[1], box.center[2]);
    mesh.name = box.entity;
    mesh.userData = { kind: box.kind };
    group.add(mesh);
  }
  for (const edge of spec.edges) {
    const geometry = new THREE.BufferGeometry().setFromPoints([
      new THREE.Vector3(...edge.points[0]),
      new THREE.Vector3(...edge.points[1]),
    ]);
    const material = new THREE.LineBasicMaterial({
      color: new THREE.Color(EDGE_COLOR),
      linewidth: edge.strokeWidth,
    });
    const line = new THREE.Line(geometry, material);
    line.name = `${edge.from}->${edge.to}`;
    line.userData = { requests: edge.requests, strokeWidth: edge.strokeWidth };
    group.add(line);
  }
  return group;
}
