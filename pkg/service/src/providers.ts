import { unitHash } from './hash.js';

/**
 * Scoring backends are pluggable. A production deployment wraps real
 * pretrained models behind these two interfaces (loaded once at
 * startup, stateless per request); the hash providers below are the
 * default fallback so the service runs anywhere with zero model
 * artifacts, deterministically.
 *
 * `audioKey` is whatever identifies the audio in the request: the
 * reference string when audio is passed by reference, or the base64
 * payload itself when passed inline.
 */
export interface AccentScoreProvider {
  readonly name: string;
  /** Confidence in [0, 1] that the audio carries the given accent. */
  score(audioKey: string, accent: string): number | Promise<number>;
}

export interface QualityProvider {
  readonly name: string;
  /** Mean-opinion-score-style quality estimate in [1, 5]. */
  score(audioKey: string): number | Promise<number>;
}

/** Seeded hash of (audio, accent) mapped into [0, 1). */
export class HashAccentScoreProvider implements AccentScoreProvider {
  readonly name = 'hash';

  constructor(private readonly seed: number = 0) {}

  score(audioKey: string, accent: string): number {
    return unitHash(this.seed, 'accent-score', audioKey, accent);
  }
}

/** Seeded hash of the audio mapped into [1, 5). */
export class HashQualityProvider implements QualityProvider {
  readonly name = 'hash';

  constructor(private readonly seed: number = 0) {}

  score(audioKey: string): number {
    return 1.0 + 4.0 * unitHash(this.seed, 'quality', audioKey);
  }
}
