// DOM wiring for the solve flow and the operator console. All protocol and
// state logic lives in api.ts / solveFlow.ts / knobs.ts; this file only
// renders state and forwards events.

import { ApiError, GeogateClient, type Bin } from './api.js';
import { describeDomain, parseFamilies } from './knobs.js';
import {
  canPick,
  initialState,
  reduce,
  remainingSeconds,
  type SolveEvent,
  type SolveState,
} from './solveFlow.js';

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function setupSolveUI(root: HTMLElement, client: GeogateClient): () => SolveState {
  let state: SolveState = initialState;
  let timer = 0;

  const controls = el('div', 'controls');
  const familySelect = el('select');
  familySelect.append(new Option('any family', ''));
  const binSelect = el('select');
  for (const bin of ['', 'easy', 'medium', 'hard']) {
    binSelect.append(new Option(bin || 'any difficulty', bin));
  }
  const newButton = el('button', 'primary', 'New challenge');
  controls.append(familySelect, binSelect, newButton);

  const status = el('p', 'status', 'Press "New challenge" to begin.');
  const prompt = el('p', 'prompt');
  const stimulus = el('div', 'stimulus');
  const candidates = el('div', 'candidates');
  root.append(controls, status, prompt, stimulus, candidates);

  client
    .health()
    .then((h) => {
      for (const family of h.families) familySelect.append(new Option(family, family));
    })
    .catch(() => {
      status.textContent = 'Service unreachable.';
    });

  function dispatch(event: SolveEvent): void {
    state = reduce(state, event);
    render();
  }

  async function requestChallenge(): Promise<void> {
    dispatch({ kind: 'request' });
    try {
      const challenge = await client.newChallenge({
        family: familySelect.value || undefined,
        bin: (binSelect.value || undefined) as Bin | undefined,
      });
      dispatch({ kind: 'received', challenge, now: Date.now() });
    } catch (err) {
      dispatch(failure(err));
    }
  }

  async function submit(label: string): Promise<void> {
    if (!canPick(state)) return;
    dispatch({ kind: 'pick', label });
    try {
      const verdict = await client.answer((state as { challenge: { token: string } }).challenge.token, label);
      dispatch({ kind: 'verdict', verdict });
    } catch (err) {
      dispatch(failure(err));
    }
  }

  function failure(err: unknown): SolveEvent {
    if (err instanceof ApiError) return { kind: 'failed', status: err.status, message: err.detail };
    return { kind: 'failed', status: 0, message: String(err) };
  }

  function render(): void {
    clearInterval(timer);
    stimulus.replaceChildren();
    candidates.replaceChildren();
    prompt.textContent = '';
    newButton.disabled = state.kind === 'loading' || state.kind === 'submitting';

    switch (state.kind) {
      case 'idle':
        status.textContent = 'Press "New challenge" to begin.';
        break;
      case 'loading':
        status.textContent = 'Generating...';
        break;
      case 'presenting': {
        const tick = () => {
          const left = remainingSeconds(state, Date.now());
          status.textContent = left === null ? '' : `Time left: ${left.toFixed(0)}s`;
          dispatch({ kind: 'tick', now: Date.now() });
        };
        timer = window.setInterval(tick, 1000);
        tick();
        renderChallenge();
        break;
      }
      case 'submitting':
        status.textContent = 'Checking...';
        renderChallenge();
        break;
      case 'answered': {
        const v = state.verdict;
        status.textContent = v.correct
          ? `Correct (${v.response_time_s.toFixed(1)}s).`
          : `Wrong: the answer was ${v.correct_label}.`;
        renderChallenge(state.label, v.correct_label);
        break;
      }
      case 'expired':
        status.textContent = 'Challenge expired. Request a new one.';
        break;
      case 'error':
        status.textContent = `Error: ${state.message}`;
        break;
    }
  }

  function renderChallenge(picked?: string, correctLabel?: string): void {
    const s = state as Extract<SolveState, { challenge: { prompt: string } }>;
    const challenge = s.challenge;
    if (!challenge) return;
    prompt.textContent = challenge.prompt;
    for (const panel of challenge.stimulus) {
      const img = el('img', 'panel');
      img.src = client.panelUrl(panel.svg_url);
      stimulus.append(img);
    }
    for (const cand of challenge.candidates) {
      const button = el('button', 'candidate');
      button.append(el('span', 'label', cand.label));
      if (cand.text) button.append(el('span', 'text', cand.text));
      if (cand.panel_svg_url) {
        const img = el('img', 'panel');
        img.src = client.panelUrl(cand.panel_svg_url);
        button.append(img);
      }
      button.disabled = !canPick(state);
      if (picked === cand.label) button.classList.add('picked');
      if (correctLabel === cand.label) button.classList.add('correct');
      button.addEventListener('click', () => void submit(cand.label));
      candidates.append(button);
    }
  }

  newButton.addEventListener('click', () => void requestChallenge());
  render();
  return () => state;
}

export function setupConsoleUI(root: HTMLElement, client: GeogateClient): void {
  const tokenInput = el('input');
  tokenInput.type = 'password';
  tokenInput.placeholder = 'admin token';
  const loadButton = el('button', undefined, 'Load knob domains');
  const output = el('div', 'console-output');
  root.append(tokenInput, loadButton, output);

  loadButton.addEventListener('click', async () => {
    output.replaceChildren();
    try {
      const families = parseFamilies(await client.manifests(tokenInput.value));
      for (const info of families) {
        const section = el('details');
        section.append(el('summary', undefined,
          `${info.family} (${info.ability}, ${info.numVariants} candidates)`));
        section.append(el('p', 'prompt', info.prompt));
        const table = el('table');
        for (const [name, domain] of Object.entries(info.knobs)) {
          const row = el('tr');
          row.append(el('td', undefined, name), el('td', undefined, describeDomain(domain)));
          table.append(row);
        }
        section.append(table);
        const previewButton = el('button', undefined, 'Preview seed 1');
        const preview = el('div', 'preview');
        previewButton.addEventListener('click', async () => {
          try {
            const p = await client.preview(tokenInput.value, info.family, 1);
            preview.innerHTML = p.stimulus_svg.join('');
            preview.append(el('p', undefined, `correct: ${p.correct_label}`));
          } catch (err) {
            preview.textContent = String(err);
          }
        });
        section.append(previewButton, preview);
        output.append(section);
      }
    } catch (err) {
      output.textContent = err instanceof ApiError ? err.detail : String(err);
    }
  });
}
