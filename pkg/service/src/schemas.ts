import { z } from 'zod';

/** Accent labels, in canonical order. `IND` is not a valid wire code. */
export const ACCENTS = [
  'CA', 'CN', 'ES', 'GB', 'IN', 'JP', 'KR', 'MY', 'PT', 'RU', 'SG', 'US',
] as const;

const nonEmpty = z.string().min(1, 'must be a non-empty string');

/** Require exactly one of two alternative audio fields. */
function exactlyOne<T extends Record<string, unknown>>(a: keyof T & string, b: keyof T & string) {
  return (body: T, ctx: z.RefinementCtx) => {
    const hasA = body[a] !== undefined;
    const hasB = body[b] !== undefined;
    if (hasA === hasB) {
      ctx.addIssue({
        code: z.ZodIssueCode.custom,
        message: `exactly one of ${a} or ${b} is required`,
      });
    }
  };
}

export const scoreAccentRequest = z
  .object({
    speech_ref: nonEmpty.optional(),
    audio_b64: nonEmpty.optional(),
    accent: z.enum(ACCENTS),
  })
  .strict()
  .superRefine(exactlyOne('speech_ref', 'audio_b64'));

export const qualityRequest = z
  .object({
    audio_ref: nonEmpty.optional(),
    audio_b64: nonEmpty.optional(),
  })
  .strict()
  .superRefine(exactlyOne('audio_ref', 'audio_b64'));

export type ScoreAccentRequest = z.infer<typeof scoreAccentRequest>;
export type QualityRequest = z.infer<typeof qualityRequest>;

/** Flatten a zod error into one human-readable diagnostic line. */
export function diagnostic(error: z.ZodError, body: unknown): string {
  const parts = error.issues.map((issue) => {
    const where = issue.path.length ? issue.path.join('.') : 'body';
    return `${where}: ${issue.message}`;
  });
  // The Python side accepts IND as a legacy alias for IN in a few
  // lenient spots; the wire contract does not. Point callers at the
  // canonical code instead of leaving them guessing.
  if (
    typeof body === 'object' &&
    body !== null &&
    (body as Record<string, unknown>).accent === 'IND'
  ) {
    parts.push('accent: "IND" is not a wire code, use "IN"');
  }
  return parts.join('; ');
}
