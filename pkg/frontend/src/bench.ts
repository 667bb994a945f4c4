// Round-trip latency benchmark for the level slider path: POST /api/slice
// on the default preset at 256^2 and report the median.
//
// Start the service first:  slicelab serve --port 8731
// Then:                     npm run build && node dist/bench.js [runs]

const BASE = process.env.SLICELAB_URL ?? "http://127.0.0.1:8731";

async function once(level: number): Promise<number> {
  const t0 = performance.now();
  const response = await fetch(`${BASE}/api/slice`, {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify({ preset: "P-eight", level, grid: 256 }),
  });
  await response.json();
  if (!response.ok) throw new Error(`status ${response.status}`);
  return performance.now() - t0;
}

async function main() {
  const runs = Number(process.argv[2] ?? 21);
  const times: number[] = [];
  await once(-0.12); // warm the critical-value cache
  for (let i = 0; i < runs; i++) {
    const level = -0.25 + (0.2 * i) / runs;
    times.push(await once(level));
  }
  times.sort((a, b) => a - b);
  const median = times[Math.floor(times.length / 2)];
  console.log(
    `slice round-trip over ${runs} runs: median ${median.toFixed(1)} ms, ` +
      `p90 ${times[Math.floor(times.length * 0.9)].toFixed(1)} ms`,
  );
  if (median > 200) {
    console.error("median exceeds the 200 ms budget");
    process.exit(1);
  }
}

main().catch((err) => {
  console.error(String(err));
  process.exit(1);
});
