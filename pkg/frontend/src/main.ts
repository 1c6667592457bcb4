import { GeogateClient } from './api.js';
import { setupConsoleUI, setupSolveUI } from './ui.js';

const client = new GeogateClient('');
setupSolveUI(document.getElementById('solve')!, client);
setupConsoleUI(document.getElementById('console')!, client);
