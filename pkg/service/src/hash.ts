import { createHash } from 'node:crypto';

/**
 * Maps (seed, parts) to a uniform float in [0, 1): the first eight
 * bytes of sha256("{seed}|{part1}|{part2}|...") read big-endian,
 * divided by 2^64.
 *
 * This is the same mapping the Python package's mock backends use, so
 * the fallback providers here score identically to them — handy for
 * cross-checking the two stacks against each other.
 */
export function unitHash(seed: number, ...parts: Array<string | number>): number {
  const payload = [seed, ...parts].map(String).join('|');
  const digest = createHash('sha256').update(payload, 'utf8').digest();
  return Number(digest.readBigUInt64BE(0)) / 2 ** 64;
}

export function clamp(value: number, lo: number, hi: number): number {
  return Math.min(hi, Math.max(lo, value));
}
