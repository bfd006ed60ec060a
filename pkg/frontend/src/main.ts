import { createApp } from './app';

const root = document.getElementById('app');
if (root === null) {
  throw new Error('missing #app mount point');
}
createApp(root, fetch.bind(window)).start();
