import { buildApp } from './app.js';
import { HashAccentScoreProvider, HashQualityProvider } from './providers.js';

const port = Number(process.env.PORT ?? 8077);
const seed = Number(process.env.SEED ?? 0);

if (!Number.isInteger(port) || port < 0 || port > 65535) {
  console.error(`invalid PORT: ${process.env.PORT}`);
  process.exit(1);
}
if (!Number.isInteger(seed)) {
  console.error(`invalid SEED: ${process.env.SEED}`);
  process.exit(1);
}

// Providers are constructed once here; requests share them statelessly.
const app = buildApp({
  accent: new HashAccentScoreProvider(seed),
  quality: new HashQualityProvider(seed),
});

app.listen(port, () => {
  console.log(`scoring service listening on :${port} (seed ${seed}, providers: hash)`);
});
