import express, { type Express, type Request, type Response, type NextFunction } from 'express';

import { clamp } from './hash.js';
import type { AccentScoreProvider, QualityProvider } from './providers.js';
import { diagnostic, qualityRequest, scoreAccentRequest } from './schemas.js';

export interface Providers {
  accent: AccentScoreProvider;
  quality: QualityProvider;
}

/**
 * Builds the scoring service:
 *
 *   POST /score_accent  {speech_ref | audio_b64, accent} -> {confidence}
 *   POST /quality       {audio_ref | audio_b64}          -> {score}
 *   GET  /health                                         -> {status, providers}
 *
 * Malformed payloads get a 4xx with a diagnostic; provider failures
 * get a 5xx. Replies are clamped into range server-side — a client
 * never sees an out-of-range score, whatever the model returns.
 */
export function buildApp(providers: Providers): Express {
  const app = express();
  app.use(express.json());

  // express.json() throws SyntaxError on unparsable bodies; turn that
  // into the same 400-with-diagnostic shape as validation failures.
  app.use((err: Error, _req: Request, res: Response, next: NextFunction) => {
    if (err instanceof SyntaxError) {
      res.status(400).json({ error: `malformed JSON body: ${err.message}` });
      return;
    }
    next(err);
  });

  app.post('/score_accent', async (req: Request, res: Response) => {
    const parsed = scoreAccentRequest.safeParse(req.body);
    if (!parsed.success) {
      return res.status(400).json({ error: diagnostic(parsed.error, req.body) });
    }
    const { speech_ref, audio_b64, accent } = parsed.data;
    const audioKey = speech_ref ?? audio_b64!;
    try {
      const raw = await providers.accent.score(audioKey, accent);
      if (!Number.isFinite(raw)) {
        throw new Error(`accent provider returned ${raw}`);
      }
      res.json({ confidence: clamp(raw, 0, 1) });
    } catch (error: unknown) {
      res.status(500).json({ error: `accent scoring failed: ${message(error)}` });
    }
  });

  app.post('/quality', async (req: Request, res: Response) => {
    const parsed = qualityRequest.safeParse(req.body);
    if (!parsed.success) {
      return res.status(400).json({ error: diagnostic(parsed.error, req.body) });
    }
    const { audio_ref, audio_b64 } = parsed.data;
    const audioKey = audio_ref ?? audio_b64!;
    try {
      const raw = await providers.quality.score(audioKey);
      if (!Number.isFinite(raw)) {
        throw new Error(`quality provider returned ${raw}`);
      }
      res.json({ score: clamp(raw, 1, 5) });
    } catch (error: unknown) {
      res.status(500).json({ error: `quality scoring failed: ${message(error)}` });
    }
  });

  app.get('/health', (_req: Request, res: Response) => {
    res.json({
      status: 'ready',
      providers: { accent: providers.accent.name, quality: providers.quality.name },
    });
  });

  app.use((_req: Request, res: Response) => {
    res.status(404).json({ error: 'not found' });
  });

  return app;
}

function message(error: unknown): string {
  return error instanceof Error ? error.message : String(error);
}
