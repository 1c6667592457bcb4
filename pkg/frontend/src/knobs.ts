// Knob-domain extraction from raw family manifests, for the operator console.

export type KnobDomain =
  | { kind: 'int'; min: number; max: number }
  | { kind: 'real'; min: number; max: number }
  | { kind: 'enum'; values: string[] };

export interface FamilyInfo {
  family: string;
  ability: string;
  prompt: string;
  numVariants: number;
  knobs: Record<string, KnobDomain>;
}

interface RawParam {
  type?: string;
  min?: number;
  max?: number;
  values?: string[];
}

interface RawManifest {
  ability?: string;
  prompt_template?: string;
  answer?: { num_variants?: number };
  params?: Record<string, RawParam>;
}

export function parseKnobDomain(raw: RawParam): KnobDomain | null {
  if (raw.type === 'enum' && Array.isArray(raw.values)) {
    return { kind: 'enum', values: raw.values.map(String) };
  }
  if ((raw.type === 'int' || raw.type === 'real') &&
      typeof raw.min === 'number' && typeof raw.max === 'number' && raw.min <= raw.max) {
    return { kind: raw.type, min: raw.min, max: raw.max };
  }
  return null;
}

export function parseFamilies(doc: Record<string, unknown>): FamilyInfo[] {
  const out: FamilyInfo[] = [];
  for (const [family, value] of Object.entries(doc)) {
    const raw = value as RawManifest;
    const knobs: Record<string, KnobDomain> = {};
    for (const [name, param] of Object.entries(raw.params ?? {})) {
      const domain = parseKnobDomain(param);
      if (domain) knobs[name] = domain;
    }
    out.push({
      family,
      ability: raw.ability ?? '?',
      prompt: raw.prompt_template ?? '',
      numVariants: raw.answer?.num_variants ?? 0,
      knobs,
    });
  }
  return out.sort((a, b) => a.family.localeCompare(b.family));
}

export function describeDomain(domain: KnobDomain): string {
  switch (domain.kind) {
    case 'int':
      return `int ${domain.min}..${domain.max}`;
    case 'real':
      return `real ${domain.min}..${domain.max}`;
    case 'enum':
      return domain.values.join(' | ');
  }
}
