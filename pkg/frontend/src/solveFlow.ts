// Solve-flow state machine, kept pure so transitions are unit-testable.
//
// idle -> loading -> presenting -> submitting -> answered
//                 \                           \-> expired (410)
//                  \-> error                   \-> error

import type { Challenge, Verdict } from './api.js';

export type SolveState =
  | { kind: 'idle' }
  | { kind: 'loading' }
  | { kind: 'presenting'; challenge: Challenge; deadline: number }
  | { kind: 'submitting'; challenge: Challenge; label: string }
  | { kind: 'answered'; challenge: Challenge; label: string; verdict: Verdict }
  | { kind: 'expired'; challenge: Challenge | null }
  | { kind: 'error'; message: string };

export type SolveEvent =
  | { kind: 'request' }
  | { kind: 'received'; challenge: Challenge; now: number }
  | { kind: 'pick'; label: string }
  | { kind: 'verdict'; verdict: Verdict }
  | { kind: 'failed'; status: number; message: string }
  | { kind: 'tick'; now: number }
  | { kind: 'reset' };

export const initialState: SolveState = { kind: 'idle' };

export function reduce(state: SolveState, event: SolveEvent): SolveState {
  switch (event.kind) {
    case 'request':
      if (state.kind === 'loading' || state.kind === 'submitting') return state;
      return { kind: 'loading' };
    case 'received':
      if (state.kind !== 'loading') return state;
      return {
        kind: 'presenting',
        challenge: event.challenge,
        deadline: event.now + event.challenge.expires_in_s * 1000,
      };
    case 'pick':
      if (state.kind !== 'presenting') return state;
      if (!state.challenge.candidates.some((c) => c.label === event.label)) return state;
      return { kind: 'submitting', challenge: state.challenge, label: event.label };
    case 'verdict':
      if (state.kind !== 'submitting') return state;
      return {
        kind: 'answered',
        challenge: state.challenge,
        label: state.label,
        verdict: event.verdict,
      };
    case 'failed': {
      const challenge =
        state.kind === 'presenting' || state.kind === 'submitting' ? state.challenge : null;
      if (event.status === 410) return { kind: 'expired', challenge };
      return { kind: 'error', message: event.message };
    }
    case 'tick':
      if (state.kind === 'presenting' && event.now >= state.deadline) {
        return { kind: 'expired', challenge: state.challenge };
      }
      return state;
    case 'reset':
      return { kind: 'idle' };
  }
}

export function remainingSeconds(state: SolveState, now: number): number | null {
  if (state.kind !== 'presenting') return null;
  return Math.max(0, (state.deadline - now) / 1000);
}

export function canPick(state: SolveState): boolean {
  return state.kind === 'presenting';
}
